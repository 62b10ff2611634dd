#include "fiberscope/complex_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fiberscope/error.hpp"

namespace fiberscope {

namespace {

std::size_t parse_index(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_no) + ": bad integer '" + token + "'");
  }
}

}  // namespace

FlagComplex read_complex(std::istream& in, std::size_t vertex_cap) {
  std::string line;
  std::size_t line_no = 0;
  bool have_n = false;
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, std::string>> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;
    if (tag == "n") {
      std::string value;
      if (have_n || !(fields >> value)) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad 'n' line");
      }
      n = parse_index(value, line_no);
      have_n = true;
    } else if (tag == "e") {
      std::string a, b;
      if (!have_n || !(fields >> a >> b)) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad edge line");
      }
      edges.emplace_back(parse_index(a, line_no), parse_index(b, line_no));
    } else if (tag == "label") {
      std::string idx;
      if (!have_n || !(fields >> idx)) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad label line");
      }
      std::string rest;
      std::getline(fields >> std::ws, rest);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r')) rest.pop_back();
      labels.emplace_back(parse_index(idx, line_no), rest);
    } else {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
    }
  }
  if (!have_n) throw Error(ErrorCode::ParseError, "missing 'n <vertex_count>' line");
  std::vector<std::string> label_vec;
  if (!labels.empty()) {
    label_vec.assign(n, "");
    for (auto& [i, text] : labels) {
      if (i >= n) throw Error(ErrorCode::IndexOutOfRange, "label for vertex " + std::to_string(i));
      label_vec[i] = std::move(text);
    }
  }
  return FlagComplex::from_graph(n, edges, std::move(label_vec), vertex_cap);
}

FlagComplex read_complex_file(const std::string& path, std::size_t vertex_cap) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open complex file '" + path + "'");
  return read_complex(in, vertex_cap);
}

void write_complex(std::ostream& out, const FlagComplex& complex) {
  out << "n " << complex.vertex_count() << '\n';
  if (complex.has_labels()) {
    for (std::size_t i = 0; i < complex.vertex_count(); ++i) {
      if (!complex.labels()[i].empty()) out << "label " << i << ' ' << complex.labels()[i] << '\n';
    }
  }
  for (const auto& [a, b] : complex.edges()) out << "e " << a << ' ' << b << '\n';
}

std::string to_text(const FlagComplex& complex) {
  std::ostringstream out;
  write_complex(out, complex);
  return out.str();
}

std::string complex_hash(const FlagComplex& complex) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  feed("n " + std::to_string(complex.vertex_count()) + "\n");
  for (const auto& [a, b] : complex.edges()) {
    feed("e " + std::to_string(a) + " " + std::to_string(b) + "\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fiberscope
