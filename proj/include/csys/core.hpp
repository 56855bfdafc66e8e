#pragma once

#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace csys {

// Index into the owning category's object table. Equality of objects is
// index equality; names are labels only.
struct ObjectId {
  std::uint32_t v = 0;
  auto operator<=>(const ObjectId&) const = default;
};

// Index into the owning category's morphism table.
struct MorphismId {
  std::uint32_t v = 0;
  auto operator<=>(const MorphismId&) const = default;
};

// A commutative square, apex = dom(left) = dom(top):
//
//   P  --top-->    B
//   |left          |right
//   A  --bottom--> C
//
// Commutes when left∘bottom == top∘right (diagrammatic order throughout:
// f∘g means "f then g").
template <typename M>
struct SquareOf {
  M left;
  M top;
  M bottom;
  M right;
};

using CommutativeSquare = SquareOf<MorphismId>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed tables, dangling references, out-of-range indices.
struct StructuralError : Error {
  using Error::Error;
};

// A stated precondition of an operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

// A mediator filter found zero or several solutions where a pullback
// guarantees exactly one. Doubles as a runtime pullback-violation detector.
struct PullbackError : Error {
  using Error::Error;
};

// A bounded search exceeded its configured budget.
struct BudgetError : Error {
  using Error::Error;
};

// Outcome of an exhaustive law check. `skipped` counts instances that fall
// outside a truncation bound and were therefore not decidable.
struct Report {
  std::vector<std::string> violations;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;

  bool ok() const { return violations.empty(); }

  void fail(std::string msg) { violations.push_back(std::move(msg)); }

  void merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
    checked += other.checked;
    skipped += other.skipped;
  }

  std::string summary() const {
    std::ostringstream os;
    os << (ok() ? "ok" : "FAILED") << " (" << checked << " checked, "
       << skipped << " skipped";
    if (!ok()) os << ", " << violations.size() << " violations";
    os << ")";
    return os.str();
  }
};

namespace detail {
inline void txt_into(std::ostringstream&) {}

template <typename T, typename... Rest>
void txt_into(std::ostringstream& os, const T& head, const Rest&... rest) {
  os << head;
  txt_into(os, rest...);
}
}  // namespace detail

template <typename... Ts>
std::string txt(const Ts&... parts) {
  std::ostringstream os;
  detail::txt_into(os, parts...);
  return os.str();
}

// FNV-1a, used to fingerprint input files in run reports.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace csys
