#include "csets/scene.hpp"

#include <sstream>
#include <stdexcept>

namespace csets {

namespace {

// split on spaces outside (), [], {} nesting
std::vector<std::string> split_fields(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ' ' && depth == 0) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string field(const std::vector<std::string>& fs, const std::string& key) {
  std::string pre = key + "=";
  for (const auto& f : fs)
    if (f.rfind(pre, 0) == 0) return f.substr(pre.size());
  throw std::invalid_argument("scene: missing field " + key);
}

bool has_field(const std::vector<std::string>& fs, const std::string& key) {
  std::string pre = key + "=";
  for (const auto& f : fs)
    if (f.rfind(pre, 0) == 0) return true;
  return false;
}

DyadicPoint parse_point_or_throw(std::string_view s) {
  auto p = DyadicPoint::parse(s);
  if (!p) throw std::invalid_argument(std::string("scene: bad point ") + std::string(s));
  return *p;
}

Dyadic parse_dyadic_or_throw(std::string_view s) {
  auto d = Dyadic::parse(s);
  if (!d) throw std::invalid_argument(std::string("scene: bad dyadic ") + std::string(s));
  return *d;
}

int parse_int(std::string_view s) { return std::stoi(std::string(s)); }

// top-level split of "a ; b ; c" respecting nesting
std::vector<std::string> split_semicolons(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ';' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(' ');
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(' ');
  return s.substr(a, b - a + 1);
}

}  // namespace

GroundTruthSet parse_shape(std::string_view line) {
  auto fs = split_fields(line);
  if (fs.empty()) throw std::invalid_argument("scene: empty shape");
  const std::string& tag = fs[0];
  if (tag == "union") {
    // union { shape ; shape ; ... }
    auto open = line.find('{');
    auto close = line.rfind('}');
    if (open == std::string_view::npos || close == std::string_view::npos || close <= open)
      throw std::invalid_argument("scene: malformed union");
    std::vector<GroundTruthSet> parts;
    for (const auto& part : split_semicolons(line.substr(open + 1, close - open - 1))) {
      std::string t = trim(part);
      if (!t.empty()) parts.push_back(parse_shape(t));
    }
    return GroundTruthSet::finite_union(std::move(parts));
  }
  int d = parse_int(field(fs, "d"));
  if (tag == "box") {
    return GroundTruthSet::box(parse_point_or_throw(field(fs, "min")),
                               parse_point_or_throw(field(fs, "max")));
  }
  if (tag == "ball") {
    auto nm = Norm::parse(field(fs, "norm"), d);
    if (!nm) throw std::invalid_argument("scene: bad norm");
    return GroundTruthSet::norm_ball(parse_point_or_throw(field(fs, "c")),
                                     parse_dyadic_or_throw(field(fs, "rad")), *nm);
  }
  if (tag == "poly") {
    std::string hs = field(fs, "hs");
    if (hs.size() < 2 || hs.front() != '[' || hs.back() != ']')
      throw std::invalid_argument("scene: malformed poly hs");
    std::vector<Halfspace> halves;
    for (const auto& item : split_semicolons(hs.substr(1, hs.size() - 2))) {
      std::string t = trim(item);
      if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw std::invalid_argument("scene: malformed halfspace");
      // format (c=(..),a=..) -- split on the comma before "a="
      std::string body = t.substr(1, t.size() - 2);
      auto apos = body.rfind(",a=");
      if (apos == std::string::npos) throw std::invalid_argument("scene: halfspace needs a=");
      std::string cpart = body.substr(0, apos);
      if (cpart.rfind("c=", 0) != 0) throw std::invalid_argument("scene: halfspace needs c=");
      halves.push_back(Halfspace{parse_point_or_throw(cpart.substr(2)),
                                 parse_dyadic_or_throw(body.substr(apos + 3))});
    }
    return GroundTruthSet::polytope(std::move(halves), d);
  }
  if (tag == "segment") {
    return GroundTruthSet::segment(parse_point_or_throw(field(fs, "a")),
                                   parse_point_or_throw(field(fs, "b")));
  }
  if (tag == "point") {
    return GroundTruthSet::singleton(parse_point_or_throw(field(fs, "p")));
  }
  throw std::invalid_argument("scene: unknown shape tag " + tag);
}

std::vector<GroundTruthSet> parse_scene(const std::string& text) {
  std::vector<GroundTruthSet> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(parse_shape(t));
  }
  return out;
}

std::string write_scene(const std::vector<GroundTruthSet>& shapes) {
  std::string out;
  for (const auto& s : shapes) {
    out += s.to_text();
    out += '\n';
  }
  return out;
}

func_ops::FuncName parse_funcspec(std::string_view line) {
  auto fs = split_fields(line);
  if (fs.empty()) throw std::invalid_argument("funcspec: empty");
  const std::string& tag = fs[0];
  if (tag == "sqrtmap") {
    Dyadic lo = parse_dyadic_or_throw(field(fs, "lo"));
    auto domain = GroundTruthSet::box(DyadicPoint(std::vector<Dyadic>{lo}),
                                      DyadicPoint(std::vector<Dyadic>{Dyadic(1)}));
    return func_ops::make_sqrt_func(lo, domain.canonical_name(RepKind::Grid, Norm::linf(1)));
  }
  if (tag == "affine") {
    int d = parse_int(field(fs, "d"));
    int e = parse_int(field(fs, "e"));
    std::string a = field(fs, "A");
    if (a.size() < 4 || a.front() != '[' || a.back() != ']')
      throw std::invalid_argument("funcspec: malformed A");
    std::vector<std::vector<Dyadic>> rows;
    {
      std::string body = a.substr(1, a.size() - 2);
      // rows are [..],[..]; split on "],[":
      std::vector<std::string> rowtexts;
      int depth = 0;
      std::string cur;
      for (char c : body) {
        if (c == '[') {
          ++depth;
          if (depth == 1) continue;
        }
        if (c == ']') {
          --depth;
          if (depth == 0) {
            rowtexts.push_back(cur);
            cur.clear();
            continue;
          }
        }
        if (c == ',' && depth == 0) continue;
        cur += c;
      }
      for (const auto& rt : rowtexts) {
        std::vector<Dyadic> row;
        std::istringstream rs(rt);
        std::string tok;
        while (std::getline(rs, tok, ',')) row.push_back(parse_dyadic_or_throw(tok));
        rows.push_back(std::move(row));
      }
    }
    if (static_cast<int>(rows.size()) != e) throw std::invalid_argument("funcspec: A row count != e");
    DyadicPoint v = parse_point_or_throw(field(fs, "v"));
    int smin = parse_int(field(fs, "smin"));
    int smax = parse_int(field(fs, "smax"));
    std::string dom = field(fs, "domain");
    if (dom.size() < 2 || dom.front() != '{' || dom.back() != '}')
      throw std::invalid_argument("funcspec: domain must be an inline {shape}");
    GroundTruthSet domain = parse_shape(trim(dom.substr(1, dom.size() - 2)));
    if (domain.dim() != d) throw std::invalid_argument("funcspec: domain dimension mismatch");
    return func_ops::make_affine_func(rows, v, domain.canonical_name(RepKind::Grid, Norm::linf(d)),
                                      smin, smax);
  }
  throw std::invalid_argument("funcspec: unknown tag " + tag);
}

}  // namespace csets
