#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qinv {

// Set partition of {0, ..., m-1}. Blocks are kept sorted and ordered by
// their smallest element, so equal partitions compare equal.
class SetPartition {
public:
    explicit SetPartition(std::vector<std::vector<int>> blocks);

    // "1,2|3" style text with 1-based elements; must cover {1..m}.
    static SetPartition parse(std::string_view text, int m);

    int elements() const { return m_; }
    std::size_t size() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_of(int element) const { return owner_[static_cast<std::size_t>(element)]; }

    // 1-based, same syntax accepted by parse().
    std::string str() const;

    friend bool operator==(const SetPartition& a, const SetPartition& b) { return a.blocks_ == b.blocks_; }

private:
    int m_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> owner_;
};

inline constexpr int kMaxPartitionElements = 12;

// Visits every partition of {0..m-1} in lexicographic restricted-growth-string
// order. The callback receives the RGS (element -> block label).
void for_each_rgs(int m, const std::function<void(const std::vector<int>&)>& visit);

// All Bell(m) partitions, restricted-growth-string order. 1 <= m <= 12.
std::vector<SetPartition> enumerate_partitions(int m);

}  // namespace qinv
