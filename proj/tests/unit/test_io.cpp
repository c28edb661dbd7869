#include <doctest.h>

#include <sstream>

#include "sl2grow/constructions.hpp"
#include "sl2grow/io.hpp"

using namespace sl2grow;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    (void)parse_set(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("accepted: " << text);
  return ErrorCode::DomainError;
}

}  // namespace

TEST_CASE("set files round trip") {
  for (const std::uint32_t p : {17U, 97U}) {
    const auto t = GroupTable::create(p);
    const ElementSet s = optimal_set(t);
    const std::string text = format_set(s);
    CHECK(text.rfind("p=" + std::to_string(p) + "\n", 0) == 0);
    const ElementSet back = parse_set(text);
    CHECK(back.table().prime() == p);
    CHECK(back.words() == s.words());
    std::istringstream in(text);
    CHECK(read_set(in, t) == s);
  }
}

TEST_CASE("comments, blank lines and spacing") {
  const ElementSet s = parse_set(
      "# two elements\n"
      "\n"
      "  p = 5  # the prime\n"
      "[[1,0],[0,1]]\n"
      "[[ 2, 0 ], [0, 3]]   # diag\n"
      "[[2,0],[0,3]]\n");
  CHECK(s.size() == 2);
  CHECK(s.contains_identity());
}

TEST_CASE("malformed set files") {
  CHECK(parse_code("") == ErrorCode::ParseError);
  CHECK(parse_code("[[1,0],[0,1]]\n") == ErrorCode::ParseError);
  CHECK(parse_code("p=five\n") == ErrorCode::ParseError);
  CHECK(parse_code("p=5\n[[1,0],[0,1]\n") == ErrorCode::ParseError);
  CHECK(parse_code("p=5\n[[1,1],[1,1]]\n") == ErrorCode::ParseError);
  CHECK(parse_code("p=9\n") == ErrorCode::NotPrime);
  std::istringstream in("p=7\n");
  try {
    (void)read_set(in, GroupTable::create(5));
    FAIL("prime mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModulusMismatch);
  }
  try {
    (void)parse_set("p=5\n[[1,0],[0,1]]\n[[1,0],[0]]\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
