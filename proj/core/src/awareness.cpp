#include "gnekit/awareness.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gnekit {

AwarenessLevel::AwarenessLevel(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.front() < 1) {
    throw std::invalid_argument("awareness members are 1-based constraint indices");
  }
}

AwarenessLevel AwarenessLevel::full(int constraint_count) {
  std::vector<int> all(static_cast<size_t>(std::max(constraint_count, 0)));
  std::iota(all.begin(), all.end(), 1);
  return AwarenessLevel(std::move(all));
}

bool AwarenessLevel::contains(int m) const {
  return std::binary_search(members_.begin(), members_.end(), m);
}

bool AwarenessLevel::subset_of(const AwarenessLevel& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

AwarenessLevel AwarenessLevel::unite(const AwarenessLevel& other) const {
  std::vector<int> merged;
  merged.reserve(members_.size() + other.members_.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(merged));
  return AwarenessLevel(std::move(merged));
}

int AwarenessLevel::max_member() const { return members_.empty() ? 0 : members_.back(); }

AwarenessOrder compare_awareness(const AwarenessLevel& a, const AwarenessLevel& b) {
  const bool ab = a.subset_of(b);
  const bool ba = b.subset_of(a);
  if (ab && ba) return AwarenessOrder::Equal;
  if (ab) return AwarenessOrder::Less;
  if (ba) return AwarenessOrder::Greater;
  return AwarenessOrder::Incomparable;
}

bool more_aware(const AwarenessLevel& a, const AwarenessLevel& b) { return b.subset_of(a); }

}  // namespace gnekit
