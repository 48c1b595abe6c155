#ifndef GDET_GROUP_HPP
#define GDET_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gdet {

using Element = std::uint32_t;

/// Catalog index (order, number) in the standard small-groups library.
struct GapId {
  unsigned order = 0;
  unsigned number = 0;
  friend bool operator==(const GapId&, const GapId&) = default;
};

/// Finite group stored as an explicit Cayley table.
///
/// Dihedral and quaternion names use the order convention: D_16 and Q_16
/// both have 16 elements. A FiniteGroup may hold an arbitrary table; use
/// validate() to check the group axioms. Immutable after construction.
class FiniteGroup {
public:
  /// `mul` is row-major: mul[g * order + h] = g·h. Inverses are read off the
  /// table (an element with no right inverse gets inv = order).
  FiniteGroup(std::string name, std::size_t order, std::vector<Element> mul, Element identity,
              std::optional<GapId> gap_id = std::nullopt);

  [[nodiscard]] std::size_t order() const noexcept { return order_; }
  [[nodiscard]] Element mul(Element g, Element h) const noexcept { return mul_[g * order_ + h]; }
  [[nodiscard]] Element inv(Element g) const noexcept { return inv_[g]; }
  [[nodiscard]] Element identity() const noexcept { return identity_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::optional<GapId>& gap_id() const noexcept { return gap_id_; }
  [[nodiscard]] std::span<const Element> table() const noexcept { return mul_; }

  [[nodiscard]] FiniteGroup renamed(std::string name, std::optional<GapId> gap_id) const;

private:
  std::string name_;
  std::size_t order_;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  Element identity_;
  std::optional<GapId> gap_id_;
};

enum class ViolationKind { Shape, LatinSquare, Identity, Inverse, Associativity };

struct GroupViolation {
  ViolationKind kind;
  std::string detail;
};

/// All axiom violations of G; empty means G is a group. O(n^3).
[[nodiscard]] std::vector<GroupViolation> validate(const FiniteGroup& g);

[[nodiscard]] FiniteGroup make_cyclic(std::size_t n);
/// Dihedral group of order n (n even, n >= 4): r of order n/2, s of order 2, s r = r^-1 s.
[[nodiscard]] FiniteGroup make_dihedral(std::size_t n);
/// Generalized quaternion group of order n (n a power of two, n >= 8).
[[nodiscard]] FiniteGroup make_quaternion(std::size_t n);
/// Componentwise product; element (g, h) has index g*|H| + h.
[[nodiscard]] FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

enum class PresentedGroup { C2sq_rtimes_C4, C4_rtimes_C4, C8_rtimes5_C2, C8_rtimes3_C2, Q8_rtimes_C2 };

/// Order-16 group from a fixed polycyclic presentation, built by collecting
/// words to normal form g1^a g2^b (g3^c).
[[nodiscard]] FiniteGroup make_presented(PresentedGroup which);

/// The 14 groups of order 16, in the table order with GAP ids attached.
[[nodiscard]] std::vector<FiniteGroup> catalog_order16();

[[nodiscard]] std::size_t element_order(const FiniteGroup& g, Element x);
/// Smallest element of order |G|, if G is cyclic.
[[nodiscard]] std::optional<Element> find_generator(const FiniteGroup& g);
[[nodiscard]] bool is_abelian(const FiniteGroup& g);
/// Histogram: element order -> number of elements with that order.
[[nodiscard]] std::map<std::size_t, std::size_t> order_statistics(const FiniteGroup& g);

/// Resolves "C_n", "D_n", "Q_n", a catalog name, or a presentation enum name.
[[nodiscard]] std::optional<FiniteGroup> group_by_name(std::string_view name);
[[nodiscard]] std::optional<FiniteGroup> group_by_gap_id(GapId id);

/// {name, order, gap_id, mul}
[[nodiscard]] nlohmann::json group_to_json(const FiniteGroup& g);
[[nodiscard]] FiniteGroup group_from_json(const nlohmann::json& j);

}  // namespace gdet

#endif  // GDET_GROUP_HPP
