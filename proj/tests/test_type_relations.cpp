#include <doctest.h>

#include "gradex/type_relations.hpp"
#include "oracle/oracle.hpp"
#include "support.hpp"

using namespace gradex;
using testing::T;

namespace {

const oracle::TypeUniverse& universe() {
  static const oracle::TypeUniverse u(oracle::default_options());
  return u;
}

}  // namespace

TEST_CASE("literal types") {
  CHECK(literal_type(Literal{std::int64_t{9}}) == Type::integer());
  CHECK(literal_type(Literal{2.5}) == Type::floating());
  CHECK(literal_type(Literal{Str{"hi"}}) == Type::string());
  CHECK(literal_type(Literal{true}) == Type::boolean());
  CHECK(literal_type(Literal{Atom{"yes"}}) == Type::atom_literal("yes"));
}

TEST_CASE("map types ignore key order") {
  CHECK(T("%{:a => integer, 1 => float}") == T("%{1 => float, :a => integer}"));
  CHECK(to_string(T("%{1 => float, :a => integer}")) == "%{:a => integer, 1 => float}");
  CHECK_THROWS_AS(Type::map({MapField{Key::atom("a"), Type::integer()}, MapField{Key::atom("a"), Type::term()}}),
                  std::invalid_argument);
}

TEST_CASE("subtyping") {
  CHECK(is_subtype(T("integer"), T("float")));
  CHECK(is_subtype(T("%{:a => integer, :b => float}"), T("%{:a => integer}")));
  CHECK_FALSE(is_subtype(T("%{:a => integer}"), T("%{:a => integer, :b => float}")));
  CHECK_FALSE(is_subtype(T("any"), T("integer")));
  CHECK(is_subtype(T("(float) -> integer"), T("(integer) -> float")));
  CHECK(is_subtype(T(":ok"), T("atom")));
  CHECK_FALSE(is_subtype(T("boolean"), T("atom")));
  CHECK(is_subtype(T("any"), T("any")));
  CHECK(is_subtype(T("any"), T("term")));
  CHECK(is_subtype(T("none"), T("any")));
  CHECK_FALSE(is_subtype(T("{integer}"), T("{integer, integer}")));
}

TEST_CASE("precision") {
  CHECK(is_more_precise(T("integer"), T("any")));
  CHECK(is_more_precise(T("[boolean]"), T("[any]")));
  CHECK(is_more_precise(T("{any, integer}"), T("{any, any}")));
  CHECK_FALSE(is_more_precise(T("integer"), T("float")));
  CHECK_FALSE(is_more_precise(T("%{:a => integer}"), T("%{:a => any, :b => any}")));
  CHECK_FALSE(is_more_precise(T("any"), T("integer")));
}

TEST_CASE("fits") {
  CHECK(fits(T("integer"), T("float")));
  CHECK(fits(T("any"), T("integer")));
  CHECK(fits(T("integer"), T("any")));
  CHECK_FALSE(fits(T("boolean"), T("float")));
  CHECK(fits(T("[any]"), T("[integer]")));
  CHECK(fits(T("(any) -> integer"), T("(string) -> float")));
  CHECK_FALSE(fits(T("%{}"), T("%{:a => any}")));
}

TEST_CASE("join and meet") {
  CHECK(join(T("boolean"), T("float")) == T("term"));
  CHECK(join(T(":yes"), T(":no")) == T("atom"));
  CHECK(join(T("any"), T("string")) == T("string"));
  CHECK(join(T("any"), T("any")) == T("any"));
  CHECK(join(T("{integer}"), T("{integer, integer}")) == T("term"));
  CHECK(join(T("[integer]"), T("{integer}")) == T("term"));
  CHECK(join(T("%{:a => integer, :b => string}"), T("%{:a => float}")) == T("%{:a => float}"));
  CHECK(join(T("(integer) -> integer"), T("(float) -> float")) == T("(integer) -> float"));
  CHECK(meet(T("integer"), T("float")) == T("integer"));
  CHECK(meet(T("integer"), T("string")) == T("none"));
  CHECK(meet(T("%{:a => float}"), T("%{1 => string}")) == T("%{:a => float, 1 => string}"));
  CHECK(meet(T("any"), T("[integer]")) == T("[integer]"));
}

TEST_CASE("the universe has the expected size and contains join results") {
  const auto& u = universe();
  CHECK(u.size() == 341);
  for (const auto& t : u.types()) {
    for (const auto& s : u.types()) {
      REQUIRE(u.index(join(t, s)).has_value());
      REQUIRE(u.index(meet(t, s)).has_value());
    }
  }
}

TEST_CASE("fits agrees with the closure oracle on every pair") {
  const auto& u = universe();
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (fits(u.at(i), u.at(j)) != u.closure_fits(i, j)) {
        if (++mismatches <= 5) {
          MESSAGE(to_string(u.at(i)) << " vs " << to_string(u.at(j)) << ": fits=" << fits(u.at(i), u.at(j)));
        }
      }
    }
  }
  CHECK(mismatches == 0);
  CHECK(u.closure_fits(T("any"), T("integer")));
  CHECK(u.closure_fits(T("integer"), T("term")));
  CHECK_FALSE(u.closure_fits(T("boolean"), T("float")));
}

TEST_CASE("subtyping and precision agree with their rule closures") {
  const auto& u = universe();
  std::size_t sub_mismatch = 0;
  std::size_t prec_mismatch = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      sub_mismatch += is_subtype(u.at(i), u.at(j)) != u.subtype().get(i, j);
      prec_mismatch += is_more_precise(u.at(i), u.at(j)) != u.precision().get(i, j);
    }
  }
  CHECK(sub_mismatch == 0);
  CHECK(prec_mismatch == 0);
}

TEST_CASE("join and meet agree with brute-force bounds on any-free pairs") {
  const auto& u = universe();
  std::size_t pairs = 0;
  std::size_t join_mismatch = 0;
  std::size_t meet_mismatch = 0;
  std::size_t ambiguous = 0;
  for (const auto& t : u.types()) {
    if (t.contains_any()) continue;
    for (const auto& s : u.types()) {
      if (s.contains_any()) continue;
      ++pairs;
      auto lub = u.brute_lub(t, s);
      auto glb = u.brute_glb(t, s);
      ambiguous += !lub.has_value() + !glb.has_value();
      join_mismatch += !(lub && *lub == join(t, s));
      meet_mismatch += !(glb && *glb == meet(t, s));
    }
  }
  CHECK(pairs > 10000);
  CHECK(ambiguous == 0);
  CHECK(join_mismatch == 0);
  CHECK(meet_mismatch == 0);
  CHECK(*u.brute_lub(T("integer"), T("float")) == T("float"));
  CHECK(*u.brute_lub(T(":a"), T(":b")) == T("atom"));
  CHECK(*u.brute_lub(T("[integer]"), T("{integer, integer}")) == T("term"));
  CHECK(*u.brute_glb(T("integer"), T("float")) == T("integer"));
  CHECK(*u.brute_glb(T("integer"), T("string")) == T("none"));
}

TEST_CASE("lattice properties over the universe") {
  const auto& u = universe();
  const auto& types = u.types();
  std::size_t failures = 0;
  for (const auto& t : types) {
    failures += !is_subtype(t, t);
    failures += !is_more_precise(t, t);
    failures += !is_more_precise(t, Type::any());
    failures += !fits(t, t);
    failures += !fits(Type::none(), t);
    failures += !fits(t, Type::term());
    if (!t.contains_any()) failures += meet(t, Type::term()) != t;
  }
  CHECK(failures == 0);

  std::size_t not_transitive = 0;
  for (const auto& a : types) {
    for (const auto& b : types) {
      if (!is_subtype(a, b)) continue;
      for (const auto& c : types) {
        if (is_subtype(b, c) && !is_subtype(a, c)) ++not_transitive;
      }
    }
  }
  CHECK(not_transitive == 0);
}

TEST_CASE("join is commutative, idempotent and an upper bound under fits") {
  const auto& u = universe();
  std::size_t failures = 0;
  for (const auto& t : u.types()) {
    failures += join(t, t) != t;
    failures += meet(t, t) != t;
    for (const auto& s : u.types()) {
      Type j = join(t, s);
      failures += j != join(s, t);
      failures += meet(t, s) != meet(s, t);
      failures += !u.closure_fits(t, j) || !u.closure_fits(s, j);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("any-free compatibility is plain subtyping") {
  const auto& u = universe();
  std::size_t failures = 0;
  for (const auto& t : u.types()) {
    if (t.contains_any()) continue;
    for (const auto& s : u.types()) {
      if (s.contains_any()) continue;
      failures += fits(t, s) != is_subtype(t, s);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("deeper lists and functions over numbers also agree with the oracle") {
  oracle::UniverseOptions opts;
  opts.base = {Type::none(), Type::term(), Type::integer(), Type::floating(), Type::any()};
  opts.tuples = false;
  opts.maps = false;
  opts.depth = 3;
  oracle::TypeUniverse deep(opts);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < deep.size(); ++i) {
    for (std::size_t j = 0; j < deep.size(); ++j) {
      mismatches += fits(deep.at(i), deep.at(j)) != deep.closure_fits(i, j);
      mismatches += is_subtype(deep.at(i), deep.at(j)) != deep.subtype().get(i, j);
    }
  }
  CHECK(deep.size() > 1000);
  CHECK(mismatches == 0);
}
