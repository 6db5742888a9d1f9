#pragma once

#include <vector>

namespace gnekit {

// Partial order on awareness levels under set inclusion.
enum class AwarenessOrder { Less, Greater, Equal, Incomparable };

/// The set of coupled-constraint indices a player knows about.
/// Indices are 1-based and kept sorted and unique.
class AwarenessLevel {
 public:
  AwarenessLevel() = default;
  explicit AwarenessLevel(std::vector<int> members);

  static AwarenessLevel full(int constraint_count);

  const std::vector<int>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int m) const;
  bool subset_of(const AwarenessLevel& other) const;
  AwarenessLevel unite(const AwarenessLevel& other) const;
  int max_member() const;  // 0 when empty

  bool operator==(const AwarenessLevel& other) const { return members_ == other.members_; }

 private:
  std::vector<int> members_;
};

/// Inclusion comparison: Less means a knows strictly fewer constraints than b.
AwarenessOrder compare_awareness(const AwarenessLevel& a, const AwarenessLevel& b);

/// True when a covers b, i.e. a knows every constraint b knows (Greater or Equal).
bool more_aware(const AwarenessLevel& a, const AwarenessLevel& b);

}  // namespace gnekit
