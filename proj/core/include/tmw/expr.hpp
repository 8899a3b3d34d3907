#ifndef TMW_EXPR_HPP_
#define TMW_EXPR_HPP_

#include <map>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "tmw/graph.hpp"

namespace tmw {

/// Multiplicities grow like matrix powers, so they are arbitrary precision.
using Mult = boost::multiprecision::cpp_int;

struct TermKey {
  Vertex vertex;
  int level;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

/// A finite formal sum of shifted vertex generators v(i) with positive
/// multiplicities. The empty sum is the monoid zero. Terms are kept in
/// canonical order (vertex declaration index, then level), so syntactic
/// equality and printing are deterministic.
class MonoidExpr {
 public:
  MonoidExpr() = default;

  static MonoidExpr generator(Vertex v, int level = 0, Mult mult = 1);

  /// Grammar: expr := term ('+' term)* | '0';
  ///          term := [mult '*'] vertex ['(' level ')'].
  /// Omitted level means 0, omitted mult means 1. A bare `0` is the zero
  /// element (quote a multiplicity, `1*0`, to name a vertex called "0").
  static MonoidExpr parse(const Graph& g, std::string_view text);

  void add(Vertex v, int level, const Mult& mult);
  MonoidExpr& operator+=(const MonoidExpr& rhs);
  friend MonoidExpr operator+(MonoidExpr lhs, const MonoidExpr& rhs) {
    lhs += rhs;
    return lhs;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<TermKey, Mult>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Throw on the zero expression.
  int min_level() const;
  int max_level() const;
  Mult total_multiplicity() const;

  /// The Z-action: every (v, i) becomes (v, i + n).
  MonoidExpr shifted(int n) const;

  std::string to_string(const Graph& g) const;

  friend bool operator==(const MonoidExpr&, const MonoidExpr&) = default;

 private:
  std::map<TermKey, Mult> terms_;
};

inline MonoidExpr shift(const MonoidExpr& x, int n) { return x.shifted(n); }

/// The order unit: sum of every vertex at level 0.
MonoidExpr order_unit(const Graph& g);

}  // namespace tmw

#endif  // TMW_EXPR_HPP_
