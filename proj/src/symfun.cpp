#include "qcduality/symfun.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace qcd {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw error("partition parts must be non-negative");
    if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1]) throw error("partition parts must be weakly decreasing");
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition conjugate(const Partition& lambda) {
  std::vector<int> out;
  for (int j = 1; j <= lambda.part(1); ++j) {
    int count = 0;
    for (int p : lambda.parts())
      if (p >= j) ++count;
    out.push_back(count);
  }
  return Partition(std::move(out));
}

Partition column(int a) { return Partition(std::vector<int>(std::max(a, 0), 1)); }

namespace {

void extend(int remaining, int cap, std::vector<int>& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int p = std::min(remaining, cap); p >= 1; --p) {
    prefix.push_back(p);
    extend(remaining - p, p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int size) {
  std::vector<Partition> out;
  std::vector<int> prefix;
  if (size >= 0) extend(size, size, prefix, out);
  return out;
}

std::vector<Partition> partitions_up_to(int max_size) {
  std::vector<Partition> out;
  for (int m = 0; m <= max_size; ++m) {
    auto level = partitions_of(m);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string to_string(const Partition& lambda) {
  std::string s = "(";
  for (std::size_t i = 0; i < lambda.parts().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(lambda.parts()[i]);
  }
  return s + ")";
}

}  // namespace qcd
