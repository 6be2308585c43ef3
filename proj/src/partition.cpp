#include "qinv/partition.hpp"

#include <algorithm>
#include <sstream>

#include "qinv/error.hpp"

namespace qinv {

SetPartition::SetPartition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
    int total = 0;
    for (auto& block : blocks_) {
        if (block.empty()) throw DomainError("set partition has an empty block");
        std::sort(block.begin(), block.end());
        total += static_cast<int>(block.size());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
    m_ = total;
    owner_.assign(static_cast<std::size_t>(m_), -1);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        for (int e : blocks_[b]) {
            if (e < 0 || e >= m_) {
                throw DomainError("set partition element " + std::to_string(e + 1) + " outside {1.." +
                                  std::to_string(m_) + "}");
            }
            if (owner_[static_cast<std::size_t>(e)] != -1) {
                throw DomainError("set partition element " + std::to_string(e + 1) + " appears twice");
            }
            owner_[static_cast<std::size_t>(e)] = static_cast<int>(b);
        }
    }
}

SetPartition SetPartition::parse(std::string_view text, int m) {
    std::vector<std::vector<int>> blocks;
    std::string s(text);
    std::stringstream blocks_in(s);
    std::string block_text;
    while (std::getline(blocks_in, block_text, '|')) {
        std::vector<int> block;
        std::stringstream sites_in(block_text);
        std::string site_text;
        while (std::getline(sites_in, site_text, ',')) {
            const auto first = site_text.find_first_not_of(" \t");
            if (first == std::string::npos) throw ParseError("empty site in partition \"" + s + "\"");
            const auto last = site_text.find_last_not_of(" \t");
            const std::string trimmed = site_text.substr(first, last - first + 1);
            if (trimmed.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("non-numeric site \"" + trimmed + "\" in partition \"" + s + "\"");
            }
            const int site = std::stoi(trimmed);
            if (site < 1 || site > m) {
                throw ParseError("site " + trimmed + " outside 1.." + std::to_string(m) + " in partition \"" + s +
                                 "\"");
            }
            block.push_back(site - 1);
        }
        if (block.empty()) throw ParseError("empty block in partition \"" + s + "\"");
        blocks.push_back(std::move(block));
    }
    if (blocks.empty()) throw ParseError("empty partition string");
    try {
        SetPartition p(std::move(blocks));
        if (p.elements() != m) {
            throw ParseError("partition \"" + s + "\" does not cover sites 1.." + std::to_string(m));
        }
        return p;
    } catch (const DomainError& e) {
        throw ParseError(std::string("bad partition \"") + s + "\": " + e.what());
    }
}

std::string SetPartition::str() const {
    std::string out;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b) out += '|';
        for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
            if (i) out += ',';
            out += std::to_string(blocks_[b][i] + 1);
        }
    }
    return out;
}

void for_each_rgs(int m, const std::function<void(const std::vector<int>&)>& visit) {
    if (m < 1 || m > kMaxPartitionElements) {
        throw DomainError("partition size " + std::to_string(m) + " outside [1, " +
                          std::to_string(kMaxPartitionElements) + "]");
    }
    std::vector<int> rgs(static_cast<std::size_t>(m), 0);
    std::vector<int> prefix_max(static_cast<std::size_t>(m), 0);
    while (true) {
        visit(rgs);
        // Advance to the next restricted-growth string in lexicographic order.
        int i = m - 1;
        while (i > 0 && rgs[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
        if (i == 0) return;
        ++rgs[static_cast<std::size_t>(i)];
        prefix_max[static_cast<std::size_t>(i)] =
            std::max(prefix_max[static_cast<std::size_t>(i - 1)], rgs[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < m; ++j) {
            rgs[static_cast<std::size_t>(j)] = 0;
            prefix_max[static_cast<std::size_t>(j)] = prefix_max[static_cast<std::size_t>(i)];
        }
    }
}

std::vector<SetPartition> enumerate_partitions(int m) {
    std::vector<SetPartition> out;
    for_each_rgs(m, [&](const std::vector<int>& rgs) {
        const int count = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(count));
        for (int e = 0; e < m; ++e) blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(e)])].push_back(e);
        out.emplace_back(std::move(blocks));
    });
    return out;
}

}  // namespace qinv
