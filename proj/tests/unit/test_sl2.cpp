#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracle.hpp"
#include "sl2grow/sl2.hpp"

using namespace sl2grow;

TEST_CASE("enumeration sizes and contents match the brute-force list") {
  for (const std::uint32_t p : {3U, 5U, 7U, 17U}) {
    const auto t = GroupTable::create(p);
    CHECK(t->order() == std::size_t{p + 1} * p * (p - 1));
    const auto brute = oracle::enumerate(p);
    std::set<oracle::Mat> listed;
    for (const auto& g : t->elements()) listed.insert(oracle::to_mat(g));
    CHECK(listed == std::set<oracle::Mat>(brute.begin(), brute.end()));
  }
  CHECK(GroupTable::create(3)->order() == 24);
  CHECK(GroupTable::create(5)->order() == 120);
  CHECK(GroupTable::create(17)->order() == 4896);
}

TEST_CASE("index_of inverts element") {
  for (const std::uint32_t p : {5U, 13U}) {
    const auto t = GroupTable::create(p);
    for (ElementIndex i = 0; i < t->order(); ++i) CHECK(t->index_of(t->element(i)) == i);
    CHECK(t->element(t->identity()).is_identity());
    CHECK(t->element(t->minus_identity()) == GroupElement::minus_identity(t->field()));
  }
}

TEST_CASE("multiplication table matches matrix products") {
  const auto t = GroupTable::create(5);
  REQUIRE(t->has_mult_table());
  for (ElementIndex i = 0; i < t->order(); ++i) {
    for (ElementIndex j = 0; j < t->order(); ++j) {
      const auto expect = oracle::mul(oracle::to_mat(t->element(i)), oracle::to_mat(t->element(j)), 5);
      CHECK(oracle::to_mat(t->element(t->mul(i, j))) == expect);
    }
  }
  CHECK_FALSE(GroupTable::create(17)->has_mult_table());
}

TEST_CASE("products, inverses and negation at p = 17") {
  const auto t = GroupTable::create(17);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<ElementIndex> pick(0, static_cast<ElementIndex>(t->order() - 1));
  for (int k = 0; k < 1000; ++k) {
    const ElementIndex i = pick(rng);
    const ElementIndex j = pick(rng);
    const ElementIndex l = pick(rng);
    CHECK(oracle::to_mat(t->element(t->mul(i, j))) ==
          oracle::mul(oracle::to_mat(t->element(i)), oracle::to_mat(t->element(j)), 17));
    CHECK(t->mul(t->mul(i, j), l) == t->mul(i, t->mul(j, l)));
  }
  for (ElementIndex i = 0; i < t->order(); ++i) {
    CHECK(t->mul(i, t->inverse(i)) == t->identity());
    CHECK(t->negate(i) == t->mul(i, t->minus_identity()));
    CHECK(t->element(t->inverse(i)) == t->element(i).inverse());
  }
}

TEST_CASE("conjugation is a bijection at p = 5") {
  const auto t = GroupTable::create(5);
  for (const auto& x : t->elements()) {
    std::set<GroupElement> image;
    for (const auto& g : t->elements()) image.insert(g.conj(x));
    CHECK(image.size() == t->order());
    const auto g = t->element(7);
    CHECK(g.conj(x) == x.inverse() * g * x);
  }
}

TEST_CASE("element order and trace") {
  const Fp f(13);
  const auto t = GroupTable::create(13);
  for (const auto& g : t->elements()) {
    std::uint64_t n = 1;
    auto m = oracle::to_mat(g);
    while (m != oracle::identity()) {
      m = oracle::mul(m, oracle::to_mat(g), 13);
      ++n;
    }
    CHECK(g.order() == n);
    CHECK(g.pow(n).is_identity());
    CHECK(g.trace() == (g.a() + g.d()) % 13);
  }
  CHECK(GroupElement::minus_identity(f).order() == 2);
  CHECK(GroupElement::upper(f(1), f(1)).order() == 13);
}

TEST_CASE("named constructors") {
  const Fp f(17);
  CHECK(GroupElement::diag(f(3)).to_string() == "[[3,0],[0,6]]");
  CHECK(GroupElement::antidiag(f(2)).to_string() == "[[0,2],[8,0]]");
  CHECK(GroupElement::upper(f(2), f(5)).to_string() == "[[2,5],[0,9]]");
}

TEST_CASE("text form round trip") {
  const auto t = GroupTable::create(5);
  for (const auto& g : t->elements()) CHECK(GroupElement::parse(g.to_string(), t->field()) == g);
  CHECK(GroupElement::parse(" [[ 2 , 0 ],\t[0, 3]] ", t->field()).to_string() == "[[2,0],[0,3]]");
  CHECK(GroupElement::parse("[[-1,0],[0,-1]]", t->field()) == GroupElement::minus_identity(t->field()));
  for (const char* bad : {"", "[[1,0],[0,1]", "[[1,0,0],[0,1]]", "[[a,0],[0,1]]", "[[1,0],[0,1]]x"}) {
    try {
      (void)GroupElement::parse(bad, t->field());
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
  try {
    (void)GroupElement::parse("[[1,1],[0,2]]", t->field());
    FAIL("accepted determinant 2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInSL2);
  }
}

TEST_CASE("errors") {
  const Fp f(5);
  const Fp g(7);
  try {
    (void)GroupElement::make(f, 1, 1, 1, 1);
    FAIL("determinant 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInSL2);
  }
  try {
    (void)(GroupElement::identity(f) * GroupElement::identity(g));
    FAIL("mixed moduli accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModulusMismatch);
  }
  try {
    (void)GroupTable::create(17, TableOptions{.max_order = 1000});
    FAIL("budget ignored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  try {
    (void)GroupTable::create(5)->index_of(GroupElement::identity(g));
    FAIL("foreign element indexed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModulusMismatch);
  }
}
