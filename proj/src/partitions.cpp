#include "bethe/partitions.hpp"

namespace bethe {

// With first = {i_1 < .. < i_k} (0-based), the concatenation (first,
// second) has sum_t (i_t - t) inversions (t 0-based as well): element i_t
// is preceded in the original order by i_t - t members of second.
Splits::Splits(int n, int k) : n_(n), k_(k), done_(false), inv_(0) {
    if (n < 0 || k < 0 || k > n)
        throw BadCardinalityError("split of " + std::to_string(n) + " into first part of size " +
                                  std::to_string(k));
    cur_.first.resize(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) cur_.first[static_cast<size_t>(t)] = t;
    cur_.sign = 1;
    fill_second();
}

void Splits::fill_second() {
    cur_.second.clear();
    cur_.second.reserve(static_cast<size_t>(n_ - k_));
    size_t pos = 0;
    for (int x = 0; x < n_; ++x) {
        if (pos < cur_.first.size() && cur_.first[pos] == x) {
            ++pos;
        } else {
            cur_.second.push_back(x);
        }
    }
}

void Splits::advance() {
    if (done_) return;
    // Lexicographic successor: bump the rightmost index that has room,
    // then pack the tail right behind it.  Each move of index t from
    // value i to value i' changes the inversion count by i' - i.
    int t = k_ - 1;
    while (t >= 0 && cur_.first[static_cast<size_t>(t)] == n_ - k_ + t) --t;
    if (t < 0) {
        done_ = true;
        return;
    }
    int base = ++cur_.first[static_cast<size_t>(t)];
    inv_ += 1;
    for (int s = t + 1; s < k_; ++s) {
        int& val = cur_.first[static_cast<size_t>(s)];
        inv_ += (base + (s - t)) - val;
        val = base + (s - t);
    }
    cur_.sign = (inv_ % 2 == 0) ? 1 : -1;
    fill_second();
}

std::uint64_t Splits::count(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw BadCardinalityError("binomial C(" + std::to_string(n) + "," + std::to_string(k) +
                                  ")");
    std::uint64_t acc = 1;
    for (int j = 1; j <= k; ++j)
        acc = acc * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    return acc;
}

MultiSplits::MultiSplits(const std::vector<std::pair<int, int>>& dims) : dims_(dims), done_(false) {
    streams_.reserve(dims.size());
    for (auto [n, k] : dims) streams_.emplace_back(n, k);
    cur_.resize(streams_.size());
    for (size_t j = 0; j < streams_.size(); ++j) cur_[j] = streams_[j].get();
}

void MultiSplits::advance() {
    if (done_) return;
    size_t j = streams_.size();
    while (j-- > 0) {
        streams_[j].advance();
        if (!streams_[j].done()) {
            cur_[j] = streams_[j].get();
            return;
        }
        streams_[j] = Splits(dims_[j].first, dims_[j].second);
        cur_[j] = streams_[j].get();
    }
    done_ = true;
}

std::uint64_t MultiSplits::count(const std::vector<std::pair<int, int>>& dims) {
    std::uint64_t acc = 1;
    for (auto [n, k] : dims) acc *= Splits::count(n, k);
    return acc;
}

} // namespace bethe
