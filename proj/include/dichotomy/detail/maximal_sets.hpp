#pragma once

#include <algorithm>
#include <vector>

namespace dichotomy::detail {

// Bron–Kerbosch enumeration of the maximal members of a downward-closed family of
// subsets of {0..n-1}. `extends(current, v)` must return whether current ∪ {v} belongs
// to the family, given that `current` does. Every singleton is assumed to be a member
// only if extends({}, v) says so.
template <class Extends>
class MaximalSetEnumerator {
public:
    MaximalSetEnumerator(int n, Extends extends) : n_(n), extends_(std::move(extends)) {}

    std::vector<std::vector<int>> run()
    {
        std::vector<int> candidates;
        for (int v = 0; v < n_; ++v)
            if (extends_(current_, v))
                candidates.push_back(v);
        recurse(std::move(candidates), {});
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

private:
    void recurse(std::vector<int> candidates, std::vector<int> excluded)
    {
        if (candidates.empty()) {
            if (excluded.empty() && !current_.empty())
                out_.push_back(current_);
            return;
        }
        // If current ∪ candidates is a member, it is the only possible maximal set below.
        const std::size_t base = current_.size();
        bool whole = true;
        for (int p : candidates) {
            if (!extends_(current_, p)) {
                whole = false;
                break;
            }
            current_.push_back(p);
        }
        if (whole) {
            bool maximal = true;
            for (int x : excluded)
                if (extends_(current_, x)) {
                    maximal = false;
                    break;
                }
            if (maximal)
                out_.push_back(current_);
        }
        current_.resize(base);
        if (whole)
            return;
        while (!candidates.empty()) {
            const int v = candidates.front();
            candidates.erase(candidates.begin());
            current_.push_back(v);
            std::vector<int> next_candidates, next_excluded;
            for (int p : candidates)
                if (extends_(current_, p))
                    next_candidates.push_back(p);
            for (int x : excluded)
                if (extends_(current_, x))
                    next_excluded.push_back(x);
            recurse(std::move(next_candidates), std::move(next_excluded));
            current_.pop_back();
            excluded.push_back(v);
        }
    }

    int n_;
    Extends extends_;
    std::vector<int> current_;
    std::vector<std::vector<int>> out_;
};

template <class Extends>
std::vector<std::vector<int>> maximal_sets(int n, Extends extends)
{
    return MaximalSetEnumerator<Extends>(n, std::move(extends)).run();
}

}  // namespace dichotomy::detail
