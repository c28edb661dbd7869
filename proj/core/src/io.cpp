#include "sl2grow/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "sl2grow/error.hpp"

namespace sl2grow {

namespace {

std::string strip(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::string out;
  for (const char ch : line) {
    if (ch != ' ' && ch != '\t' && ch != '\r') out.push_back(ch);
  }
  return out;
}

struct RawSet {
  std::uint32_t p = 0;
  std::vector<std::string> matrices;
  std::vector<std::size_t> lines;
};

RawSet read_raw(std::istream& in) {
  RawSet raw;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = strip(line);
    if (text.empty()) continue;
    if (!have_header) {
      if (!text.starts_with("p=")) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected 'p=<prime>' header");
      }
      const char* first = text.data() + 2;
      const char* last = text.data() + text.size();
      const auto [ptr, ec] = std::from_chars(first, last, raw.p);
      if (ec != std::errc{} || ptr != last || first == last) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": bad prime '" + text + "'");
      }
      have_header = true;
      continue;
    }
    raw.matrices.push_back(text);
    raw.lines.push_back(number);
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "missing 'p=<prime>' header");
  return raw;
}

ElementSet fill(const RawSet& raw, const TablePtr& table) {
  ElementSet s(table);
  for (std::size_t k = 0; k < raw.matrices.size(); ++k) {
    try {
      s.insert(table->index_of(GroupElement::parse(raw.matrices[k], table->field())));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(raw.lines[k]) + ": " + e.what());
    }
  }
  return s;
}

}  // namespace

void write_set(std::ostream& out, const ElementSet& s) {
  out << "p=" << s.table().prime() << '\n';
  s.for_each([&](ElementIndex i) { out << s.table().element(i).to_string() << '\n'; });
}

std::string format_set(const ElementSet& s) {
  std::ostringstream out;
  write_set(out, s);
  return out.str();
}

ElementSet read_set(std::istream& in, const TableOptions& opts) {
  const RawSet raw = read_raw(in);
  return fill(raw, GroupTable::create(raw.p, opts));
}

ElementSet parse_set(std::string_view text, const TableOptions& opts) {
  std::istringstream in{std::string(text)};
  return read_set(in, opts);
}

ElementSet read_set(std::istream& in, const TablePtr& table) {
  const RawSet raw = read_raw(in);
  if (raw.p != table->prime()) {
    throw Error(ErrorCode::ModulusMismatch,
                "set file is for p=" + std::to_string(raw.p) + ", table is for p=" + std::to_string(table->prime()));
  }
  return fill(raw, table);
}

ElementSet read_set_file(const std::string& path, const TableOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_set(in, opts);
}

}  // namespace sl2grow
