#include "gdet/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gdet {

FiniteGroup::FiniteGroup(std::string name, std::size_t order, std::vector<Element> mul, Element identity,
                         std::optional<GapId> gap_id)
    : name_(std::move(name)), order_(order), mul_(std::move(mul)), identity_(identity), gap_id_(gap_id) {
  if (order_ == 0) throw std::invalid_argument("FiniteGroup: order must be positive");
  if (mul_.size() != order_ * order_) throw std::invalid_argument("FiniteGroup: table size is not order^2");
  inv_.assign(order_, static_cast<Element>(order_));
  for (std::size_t g = 0; g < order_; ++g) {
    for (std::size_t h = 0; h < order_; ++h) {
      if (mul_[g * order_ + h] == identity_) {
        inv_[g] = static_cast<Element>(h);
        break;
      }
    }
  }
}

FiniteGroup FiniteGroup::renamed(std::string name, std::optional<GapId> gap_id) const {
  return FiniteGroup(std::move(name), order_, mul_, identity_, gap_id);
}

std::vector<GroupViolation> validate(const FiniteGroup& g) {
  std::vector<GroupViolation> out;
  const std::size_t n = g.order();
  const auto t = g.table();
  if (g.identity() >= n) {
    out.push_back({ViolationKind::Shape, "identity index out of range"});
    return out;
  }
  for (Element x : t) {
    if (x >= n) {
      out.push_back({ViolationKind::Shape, "table entry out of range"});
      return out;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<char> row(n, 0);
    std::vector<char> col(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
      row[t[a * n + b]] = 1;
      col[t[b * n + a]] = 1;
    }
    if (std::count(row.begin(), row.end(), 1) != static_cast<std::ptrdiff_t>(n)) {
      out.push_back({ViolationKind::LatinSquare, "row " + std::to_string(a) + " is not a permutation"});
    }
    if (std::count(col.begin(), col.end(), 1) != static_cast<std::ptrdiff_t>(n)) {
      out.push_back({ViolationKind::LatinSquare, "column " + std::to_string(a) + " is not a permutation"});
    }
  }
  const Element e = g.identity();
  for (Element x = 0; x < n; ++x) {
    if (g.mul(e, x) != x || g.mul(x, e) != x) {
      out.push_back({ViolationKind::Identity, "identity fails at element " + std::to_string(x)});
    }
  }
  for (Element x = 0; x < n; ++x) {
    const Element y = g.inv(x);
    if (y >= n || g.mul(x, y) != e || g.mul(y, x) != e) {
      out.push_back({ViolationKind::Inverse, "no two-sided inverse for element " + std::to_string(x)});
    }
  }
  std::size_t assoc_failures = 0;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const Element ab = g.mul(a, b);
      for (Element c = 0; c < n; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) ++assoc_failures;
      }
    }
  }
  if (assoc_failures != 0) {
    out.push_back({ViolationKind::Associativity, std::to_string(assoc_failures) + " non-associative triples"});
  }
  return out;
}

FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("make_cyclic: order must be positive");
  std::vector<Element> mul(n * n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) mul[g * n + h] = static_cast<Element>((g + h) % n);
  }
  std::optional<GapId> gap;
  if (n == 16) gap = GapId{16, 1};
  return FiniteGroup("C_" + std::to_string(n), n, std::move(mul), 0, gap);
}

FiniteGroup make_dihedral(std::size_t n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("make_dihedral: order must be even and at least 4");
  const std::size_t m = n / 2;
  // r^i s^j has index i + m*j
  std::vector<Element> mul(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = x % m;
    const std::size_t b = x / m;
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t c = y % m;
      const std::size_t d = y / m;
      const std::size_t i = b == 0 ? (a + c) % m : (a + m - c) % m;
      mul[x * n + y] = static_cast<Element>(i + m * ((b + d) % 2));
    }
  }
  std::optional<GapId> gap;
  if (n == 16) gap = GapId{16, 7};
  return FiniteGroup("D_" + std::to_string(n), n, std::move(mul), 0, gap);
}

FiniteGroup make_quaternion(std::size_t n) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("make_quaternion: order must be a power of two, at least 8");
  }
  const std::size_t m = n / 2;
  // x^a y^b has index a + m*b; x^m = e, y^2 = x^(m/2), y x = x^-1 y
  std::vector<Element> mul(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t a = u % m;
    const std::size_t b = u / m;
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t c = v % m;
      const std::size_t d = v / m;
      std::size_t e = 0;
      std::size_t f = 0;
      if (b == 0) {
        e = (a + c) % m;
        f = d;
      } else if (d == 0) {
        e = (a + m - c) % m;
        f = 1;
      } else {
        e = (a + m - c + m / 2) % m;
        f = 0;
      }
      mul[u * n + v] = static_cast<Element>(e + m * f);
    }
  }
  std::optional<GapId> gap;
  if (n == 16) gap = GapId{16, 9};
  return FiniteGroup("Q_" + std::to_string(n), n, std::move(mul), 0, gap);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.order();
  const std::size_t nh = h.order();
  const std::size_t n = ng * nh;
  std::vector<Element> mul(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Element a = g.mul(static_cast<Element>(x / nh), static_cast<Element>(y / nh));
      const Element b = h.mul(static_cast<Element>(x % nh), static_cast<Element>(y % nh));
      mul[x * n + y] = static_cast<Element>(a * nh + b);
    }
  }
  const auto id = static_cast<Element>(g.identity() * nh + h.identity());
  return FiniteGroup(g.name() + " x " + h.name(), n, std::move(mul), id);
}

namespace {

// g_i^{m_i} = power[i]; g_j g_i = swap[{j,i}] for j > i (absent: commute).
struct Presentation {
  std::vector<unsigned> relative_orders;
  std::vector<std::vector<unsigned>> power;
  std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> swap;
};

std::vector<unsigned> repeat(unsigned gen, unsigned times) { return std::vector<unsigned>(times, gen); }

std::vector<unsigned> concat(std::vector<unsigned> a, const std::vector<unsigned>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Presentation presentation_of(PresentedGroup which) {
  Presentation p;
  switch (which) {
    case PresentedGroup::C2sq_rtimes_C4:
      // g1^2 = g2^2 = g3^4 = e, g2 g1 = g1 g2, g3 g1 = g1 g3, g3 g2 = g1 g2 g3
      p.relative_orders = {2, 2, 4};
      p.power = {{}, {}, {}};
      p.swap[{2, 1}] = {0, 1, 2};
      break;
    case PresentedGroup::C4_rtimes_C4:
      // g1^4 = g2^4 = e, g2 g1 = g1^3 g2
      p.relative_orders = {4, 4};
      p.power = {{}, {}};
      p.swap[{1, 0}] = concat(repeat(0, 3), {1});
      break;
    case PresentedGroup::C8_rtimes5_C2:
      // g1^8 = g2^2 = e, g2 g1 = g1^5 g2
      p.relative_orders = {8, 2};
      p.power = {{}, {}};
      p.swap[{1, 0}] = concat(repeat(0, 5), {1});
      break;
    case PresentedGroup::C8_rtimes3_C2:
      // g1^8 = g2^2 = e, g2 g1 = g1^3 g2
      p.relative_orders = {8, 2};
      p.power = {{}, {}};
      p.swap[{1, 0}] = concat(repeat(0, 3), {1});
      break;
    case PresentedGroup::Q8_rtimes_C2:
      // g1^4 = g3^2 = e, g1^2 = g2^2, g2 g1 = g1 g2, g3 g2 = g2 g3, g3 g1 = g1^3 g3
      p.relative_orders = {4, 2, 2};
      p.power = {{}, {0, 0}, {}};
      p.swap[{2, 0}] = concat(repeat(0, 3), {2});
      break;
  }
  return p;
}

// Rewrites a word to normal form (nondecreasing generators, each run shorter
// than its relative order) and returns the exponent vector.
std::vector<unsigned> collect(const Presentation& p, std::vector<unsigned> word) {
  constexpr std::size_t kStepLimit = 1'000'000;
  for (std::size_t step = 0;; ++step) {
    if (step == kStepLimit) throw std::logic_error("make_presented: collection did not terminate");
    bool changed = false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      if (word[k] > word[k + 1]) {
        const unsigned j = word[k];
        const unsigned i = word[k + 1];
        auto it = p.swap.find({j, i});
        const std::vector<unsigned> rhs = it != p.swap.end() ? it->second : std::vector<unsigned>{i, j};
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(k), word.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        word.insert(word.begin() + static_cast<std::ptrdiff_t>(k), rhs.begin(), rhs.end());
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (std::size_t k = 0; k < word.size();) {
      std::size_t run = 1;
      while (k + run < word.size() && word[k + run] == word[k]) ++run;
      const unsigned gen = word[k];
      if (run >= p.relative_orders[gen]) {
        const auto first = word.begin() + static_cast<std::ptrdiff_t>(k);
        word.erase(first, first + p.relative_orders[gen]);
        word.insert(word.begin() + static_cast<std::ptrdiff_t>(k), p.power[gen].begin(), p.power[gen].end());
        changed = true;
        break;
      }
      k += run;
    }
    if (!changed) break;
  }
  std::vector<unsigned> exps(p.relative_orders.size(), 0);
  for (unsigned gen : word) ++exps[gen];
  return exps;
}

std::vector<unsigned> word_of(const std::vector<unsigned>& exps) {
  std::vector<unsigned> w;
  for (unsigned gen = 0; gen < exps.size(); ++gen) w.insert(w.end(), exps[gen], gen);
  return w;
}

const char* presented_name(PresentedGroup which) {
  switch (which) {
    case PresentedGroup::C2sq_rtimes_C4: return "C_2^2 : C_4";
    case PresentedGroup::C4_rtimes_C4: return "C_4 : C_4";
    case PresentedGroup::C8_rtimes5_C2: return "C_8 :_5 C_2";
    case PresentedGroup::C8_rtimes3_C2: return "C_8 :_3 C_2";
    case PresentedGroup::Q8_rtimes_C2: return "Q_8 : C_2";
  }
  return "";
}

GapId presented_gap(PresentedGroup which) {
  switch (which) {
    case PresentedGroup::C2sq_rtimes_C4: return {16, 3};
    case PresentedGroup::C4_rtimes_C4: return {16, 4};
    case PresentedGroup::C8_rtimes5_C2: return {16, 6};
    case PresentedGroup::C8_rtimes3_C2: return {16, 8};
    case PresentedGroup::Q8_rtimes_C2: return {16, 13};
  }
  return {};
}

}  // namespace

FiniteGroup make_presented(PresentedGroup which) {
  const Presentation p = presentation_of(which);
  const unsigned gens = static_cast<unsigned>(p.relative_orders.size());
  // closure from the identity under right multiplication by generators
  std::map<std::vector<unsigned>, Element> index;
  std::vector<std::vector<unsigned>> elements;
  const std::vector<unsigned> id(gens, 0);
  index[id] = 0;
  elements.push_back(id);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (unsigned gen = 0; gen < gens; ++gen) {
      auto next = collect(p, concat(word_of(elements[k]), {gen}));
      if (index.emplace(next, static_cast<Element>(elements.size())).second) elements.push_back(next);
    }
    if (elements.size() > 16) break;
  }
  if (elements.size() != 16) {
    throw std::logic_error(std::string("make_presented: closure of ") + presented_name(which) + " has " +
                           std::to_string(elements.size()) + " elements, expected 16");
  }
  std::sort(elements.begin(), elements.end());
  index.clear();
  for (std::size_t k = 0; k < elements.size(); ++k) index[elements[k]] = static_cast<Element>(k);
  std::vector<Element> mul(16 * 16);
  for (std::size_t a = 0; a < 16; ++a) {
    for (std::size_t b = 0; b < 16; ++b) {
      auto prod = collect(p, concat(word_of(elements[a]), word_of(elements[b])));
      auto it = index.find(prod);
      if (it == index.end()) throw std::logic_error("make_presented: product left the closure");
      mul[a * 16 + b] = it->second;
    }
  }
  FiniteGroup g(presented_name(which), 16, std::move(mul), index.at(id), presented_gap(which));
  if (!validate(g).empty()) throw std::logic_error("make_presented: collected table is not a group");
  return g;
}

std::vector<FiniteGroup> catalog_order16() {
  const auto c2 = make_cyclic(2);
  const auto c4 = make_cyclic(4);
  const auto c8 = make_cyclic(8);
  std::vector<FiniteGroup> out;
  out.push_back(make_cyclic(16));
  out.push_back(direct_product(c8, c2).renamed("C_8 x C_2", GapId{16, 5}));
  out.push_back(direct_product(c4, c4).renamed("C_4 x C_4", GapId{16, 2}));
  out.push_back(direct_product(direct_product(c4, c2), c2).renamed("C_4 x C_2^2", GapId{16, 10}));
  out.push_back(direct_product(direct_product(direct_product(c2, c2), c2), c2).renamed("C_2^4", GapId{16, 14}));
  out.push_back(direct_product(make_dihedral(8), c2).renamed("D_8 x C_2", GapId{16, 11}));
  out.push_back(make_presented(PresentedGroup::Q8_rtimes_C2));
  out.push_back(make_presented(PresentedGroup::C2sq_rtimes_C4));
  out.push_back(make_presented(PresentedGroup::C4_rtimes_C4));
  out.push_back(make_presented(PresentedGroup::C8_rtimes5_C2));
  out.push_back(direct_product(make_quaternion(8), c2).renamed("Q_8 x C_2", GapId{16, 12}));
  out.push_back(make_presented(PresentedGroup::C8_rtimes3_C2));
  out.push_back(make_quaternion(16));
  out.push_back(make_dihedral(16));
  return out;
}

std::size_t element_order(const FiniteGroup& g, Element x) {
  std::size_t k = 1;
  Element y = x;
  while (y != g.identity()) {
    y = g.mul(y, x);
    if (++k > g.order()) throw std::logic_error("element_order: element has no finite order in table");
  }
  return k;
}

std::optional<Element> find_generator(const FiniteGroup& g) {
  for (Element x = 0; x < g.order(); ++x) {
    if (element_order(g, x) == g.order()) return x;
  }
  return std::nullopt;
}

bool is_abelian(const FiniteGroup& g) {
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = a + 1; b < g.order(); ++b) {
      if (g.mul(a, b) != g.mul(b, a)) return false;
    }
  }
  return true;
}

std::map<std::size_t, std::size_t> order_statistics(const FiniteGroup& g) {
  std::map<std::size_t, std::size_t> out;
  for (Element x = 0; x < g.order(); ++x) ++out[element_order(g, x)];
  return out;
}

namespace {

std::optional<std::size_t> parse_suffix(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto digits = name.substr(prefix.size());
  if (digits.empty() || digits.size() > 4) return std::nullopt;
  std::size_t n = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return n;
}

}  // namespace

std::optional<FiniteGroup> group_by_name(std::string_view name) {
  static const std::map<std::string_view, PresentedGroup> kEnumNames = {
      {"C2sq_rtimes_C4", PresentedGroup::C2sq_rtimes_C4}, {"C4_rtimes_C4", PresentedGroup::C4_rtimes_C4},
      {"C8_rtimes5_C2", PresentedGroup::C8_rtimes5_C2},   {"C8_rtimes3_C2", PresentedGroup::C8_rtimes3_C2},
      {"Q8_rtimes_C2", PresentedGroup::Q8_rtimes_C2}};
  if (auto it = kEnumNames.find(name); it != kEnumNames.end()) return make_presented(it->second);
  if (auto n = parse_suffix(name, "C_"); n && *n >= 1 && *n <= 64) return make_cyclic(*n);
  if (auto n = parse_suffix(name, "D_"); n && *n >= 4 && *n % 2 == 0 && *n <= 64) return make_dihedral(*n);
  if (auto n = parse_suffix(name, "Q_"); n && *n >= 8 && (*n & (*n - 1)) == 0 && *n <= 64) {
    return make_quaternion(*n);
  }
  for (auto& g : catalog_order16()) {
    if (g.name() == name) return g;
  }
  return std::nullopt;
}

std::optional<FiniteGroup> group_by_gap_id(GapId id) {
  if (id.order != 16) return std::nullopt;
  for (auto& g : catalog_order16()) {
    if (g.gap_id() == id) return g;
  }
  return std::nullopt;
}

nlohmann::json group_to_json(const FiniteGroup& g) {
  nlohmann::json j;
  j["name"] = g.name();
  j["order"] = g.order();
  if (g.gap_id()) {
    j["gap_id"] = {g.gap_id()->order, g.gap_id()->number};
  } else {
    j["gap_id"] = nullptr;
  }
  j["mul"] = std::vector<Element>(g.table().begin(), g.table().end());
  return j;
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  std::optional<GapId> gap;
  if (j.contains("gap_id") && !j["gap_id"].is_null()) {
    gap = GapId{j["gap_id"][0].get<unsigned>(), j["gap_id"][1].get<unsigned>()};
  }
  const auto order = j.at("order").get<std::size_t>();
  auto mul = j.at("mul").get<std::vector<Element>>();
  // the identity is the element whose row is the identity permutation
  Element id = 0;
  for (std::size_t g = 0; g < order; ++g) {
    bool is_id = true;
    for (std::size_t h = 0; h < order && is_id; ++h) is_id = mul.at(g * order + h) == h;
    if (is_id) {
      id = static_cast<Element>(g);
      break;
    }
  }
  return FiniteGroup(j.at("name").get<std::string>(), order, std::move(mul), id, gap);
}

}  // namespace gdet
