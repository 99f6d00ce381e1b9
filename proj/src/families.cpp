#include "graphgap/families.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace graphgap {

int WreathRecursionSpec::generator_index(const std::string& name) const {
  for (size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].name == name) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown generator: " + name);
}

TreeWord act(const WreathRecursionSpec& spec, int generator,
             const TreeWord& w) {
  if (generator < 0 || generator >= static_cast<int>(spec.generators.size())) {
    throw std::invalid_argument("generator index out of range");
  }
  TreeWord out = w;
  int cur = generator;
  for (size_t i = 0; i < w.size(); ++i) {
    if (cur == kIdentitySection) break;
    const GeneratorRule& rule = spec.generators[cur];
    int letter = w[i] - '0';
    if (letter < 0 || letter >= spec.alphabet_size) {
      throw std::invalid_argument("act: letter '" + std::string(1, w[i]) +
                                  "' outside the alphabet");
    }
    out[i] = static_cast<char>('0' + rule.root_perm[letter]);
    cur = rule.sections[letter];
  }
  return out;
}

TreeWord act(const WreathRecursionSpec& spec, const std::string& generator,
             const TreeWord& w) {
  return act(spec, spec.generator_index(generator), w);
}

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& what) {
  throw std::runtime_error("spec parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(col) + ": " + what);
}

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  int line;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  int col() const { return static_cast<int>(pos) + 1; }
  bool done() const { return pos >= s.size(); }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  void expect(char c, const std::string& what) {
    if (done() || s[pos] != c) parse_fail(line, col(), what);
    ++pos;
  }
};

std::string read_name(Cursor& c) {
  c.skip_ws();
  size_t start = c.pos;
  while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) ||
                       c.peek() == '_')) {
    ++c.pos;
  }
  if (c.pos == start) parse_fail(c.line, c.col(), "expected a name");
  return c.s.substr(start, c.pos - start);
}

int read_int(Cursor& c) {
  c.skip_ws();
  size_t start = c.pos;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
    ++c.pos;
  }
  if (c.pos == start) parse_fail(c.line, c.col(), "expected an integer");
  return std::stoi(c.s.substr(start, c.pos - start));
}

// Cycle notation, e.g. "(0 1)", "(0 1)(2 3)" or "()" for the identity.
std::vector<int> read_permutation(Cursor& c, int d) {
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  c.skip_ws();
  if (c.peek() != '(') parse_fail(c.line, c.col(), "expected '(' to start a permutation");
  std::vector<bool> seen(d, false);
  while (c.peek() == '(') {
    ++c.pos;
    std::vector<int> cycle;
    c.skip_ws();
    while (c.peek() != ')') {
      int col = c.col();
      int letter = read_int(c);
      if (letter < 0 || letter >= d) {
        parse_fail(c.line, col, "letter " + std::to_string(letter) +
                                    " outside alphabet of size " +
                                    std::to_string(d));
      }
      if (seen[letter]) {
        parse_fail(c.line, col,
                   "letter " + std::to_string(letter) + " repeated in permutation");
      }
      seen[letter] = true;
      cycle.push_back(letter);
      c.skip_ws();
    }
    c.expect(')', "expected ')'");
    for (size_t i = 0; i < cycle.size(); ++i) {
      perm[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    c.skip_ws();
  }
  return perm;
}

}  // namespace

WreathRecursionSpec parse_spec(const std::string& text) {
  WreathRecursionSpec spec;
  std::vector<std::vector<std::string>> section_names;
  std::vector<std::pair<int, int>> section_pos;  // line, column of first name

  int line_no = 0;
  size_t offset = 0;
  bool saw_alphabet = false;
  while (offset <= text.size()) {
    size_t end = text.find('\n', offset);
    std::string line = text.substr(
        offset, end == std::string::npos ? std::string::npos : end - offset);
    ++line_no;
    offset = end == std::string::npos ? text.size() + 1 : end + 1;

    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }

    Cursor c{line, 0, line_no};
    if (!saw_alphabet) {
      std::string kw = read_name(c);
      if (kw != "alphabet") parse_fail(line_no, 1, "expected 'alphabet <d>' header");
      int d = read_int(c);
      if (d < 2) parse_fail(line_no, c.col(), "alphabet size must be >= 2");
      spec.alphabet_size = d;
      saw_alphabet = true;
      continue;
    }

    GeneratorRule rule;
    rule.name = read_name(c);
    for (const GeneratorRule& g : spec.generators) {
      if (g.name == rule.name) {
        parse_fail(line_no, 1, "duplicate generator '" + rule.name + "'");
      }
    }
    c.skip_ws();
    c.expect('=', "expected '='");
    rule.root_perm = read_permutation(c, spec.alphabet_size);

    c.skip_ws();
    c.expect('[', "expected '[' to start the section list");
    std::vector<std::string> names;
    section_pos.push_back({line_no, c.col()});
    for (int i = 0; i < spec.alphabet_size; ++i) {
      names.push_back(read_name(c));
      c.skip_ws();
      if (i + 1 < spec.alphabet_size) c.expect(',', "expected ','");
    }
    c.expect(']', "expected ']'");
    c.skip_ws();
    if (!c.done()) parse_fail(line_no, c.col(), "trailing characters");

    spec.generators.push_back(std::move(rule));
    section_names.push_back(std::move(names));
  }
  if (!saw_alphabet) parse_fail(1, 1, "empty spec");
  if (spec.generators.empty()) parse_fail(line_no, 1, "no generators declared");

  // Section names may reference generators declared later; resolve last.
  for (size_t gi = 0; gi < spec.generators.size(); ++gi) {
    for (const std::string& name : section_names[gi]) {
      if (name == "1") {
        spec.generators[gi].sections.push_back(kIdentitySection);
        continue;
      }
      bool found = false;
      for (size_t gj = 0; gj < spec.generators.size(); ++gj) {
        if (spec.generators[gj].name == name) {
          spec.generators[gi].sections.push_back(static_cast<int>(gj));
          found = true;
          break;
        }
      }
      if (!found) {
        parse_fail(section_pos[gi].first, section_pos[gi].second,
                   "unknown section name '" + name + "'");
      }
    }
  }
  return spec;
}

namespace {

int word_to_index(const TreeWord& w, int d) {
  int idx = 0;
  for (char ch : w) idx = idx * d + (ch - '0');
  return idx;
}

TreeWord index_to_word(int idx, int d, int level) {
  TreeWord w(level, '0');
  for (int i = level - 1; i >= 0; --i) {
    w[i] = static_cast<char>('0' + idx % d);
    idx /= d;
  }
  return w;
}

int checked_power(int base, int exp, int cap) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > cap) throw std::invalid_argument("level too large");
  }
  return static_cast<int>(v);
}

}  // namespace

Multigraph schreier_graph(const WreathRecursionSpec& spec, int level) {
  if (level < 1) throw std::invalid_argument("schreier_graph: level must be >= 1");
  const int d = spec.alphabet_size;
  const int n = checked_power(d, level, 1 << 20);

  std::vector<std::string> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = index_to_word(v, d, level);

  std::vector<Edge> edges;
  for (size_t gi = 0; gi < spec.generators.size(); ++gi) {
    std::vector<int> image(n);
    for (int v = 0; v < n; ++v) {
      image[v] = word_to_index(act(spec, static_cast<int>(gi), labels[v]), d);
    }
    for (int v = 0; v < n; ++v) {
      if (image[image[v]] != v) {
        throw std::runtime_error(
            "schreier_graph: generator '" + spec.generators[gi].name +
            "' is not an involution on level-" + std::to_string(level) +
            " words (word " + labels[v] + ")");
      }
    }
    for (int v = 0; v < n; ++v) {
      if (image[v] == v) {
        edges.push_back({v, v, 1});
      } else if (v < image[v]) {
        edges.push_back({v, image[v], 1});
      }
    }
  }
  return Multigraph(n, std::move(edges), std::move(labels));
}

const char* const kHanoiSpecText =
    "alphabet 3\n"
    "a = (0 1) [1, 1, a]\n"
    "b = (0 2) [1, b, 1]\n"
    "c = (1 2) [c, 1, 1]\n";

const char* const kGrigorchukSpecText =
    "alphabet 2\n"
    "a = (0 1) [1, 1]\n"
    "b = () [a, c]\n"
    "c = () [a, d]\n"
    "d = () [1, b]\n";

const WreathRecursionSpec& hanoi_spec() {
  static const WreathRecursionSpec spec = parse_spec(kHanoiSpecText);
  return spec;
}

const WreathRecursionSpec& grigorchuk_spec() {
  static const WreathRecursionSpec spec = parse_spec(kGrigorchukSpecText);
  return spec;
}

Multigraph hanoi_graph(int level) {
  if (level < 1 || level > 8) {
    throw std::invalid_argument("hanoi_graph: level must be in [1, 8]");
  }
  return schreier_graph(hanoi_spec(), level);
}

Multigraph grigorchuk_graph(int level) {
  if (level < 1 || level > 12) {
    throw std::invalid_argument("grigorchuk_graph: level must be in [1, 12]");
  }
  return schreier_graph(grigorchuk_spec(), level);
}

Multigraph lamplighter_graph(int n) {
  if (n < 2 || n > 10) {
    throw std::invalid_argument("lamplighter_graph: n must be in [2, 10]");
  }
  const int configs = 1 << n;
  const int total = n * configs;
  auto index = [n](int lamps, int pos) { return lamps * n + pos; };

  std::vector<std::string> labels(total);
  for (int lamps = 0; lamps < configs; ++lamps) {
    std::string bits(n, '0');
    for (int i = 0; i < n; ++i) {
      if (lamps & (1 << i)) bits[i] = '1';
    }
    for (int pos = 0; pos < n; ++pos) {
      labels[index(lamps, pos)] = bits + "|" + std::to_string(pos);
    }
  }

  std::vector<Edge> edges;
  for (int lamps = 0; lamps < configs; ++lamps) {
    for (int pos = 0; pos < n; ++pos) {
      int v = index(lamps, pos);
      // s flips the lamp at the current position; always a proper edge.
      int u = index(lamps ^ (1 << pos), pos);
      if (v < u) edges.push_back({v, u, 1});
      // t advances the position; one edge per (v, vt) pair covers t and t^-1.
      int w = index(lamps, (pos + 1) % n);
      if (n == 2) {
        if (v < w) edges.push_back({v, w, 1});
      } else {
        edges.push_back({v, w, 1});
      }
    }
  }
  return Multigraph(total, std::move(edges), std::move(labels),
                    /*transitive=*/true);
}

int ball_path_ball_size(int n) { return 3 * (1 << n) - 2; }

Multigraph ball_path_graph(int n) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument("ball_path_graph: n must be in [1, 10]");
  }
  const int ball = ball_path_ball_size(n);
  const int total = 2 * ball;
  std::vector<Edge> edges;
  std::vector<std::string> labels(total);
  labels[0] = "b0";

  // Breadth-first tree: the center has 3 children, every other ball vertex 2.
  int next = 1;
  std::vector<std::pair<int, int>> frontier = {{0, 0}};  // (vertex, depth)
  while (!frontier.empty()) {
    std::vector<std::pair<int, int>> layer;
    for (auto [v, depth] : frontier) {
      if (depth == n) continue;
      int children = (v == 0) ? 3 : 2;
      for (int c = 0; c < children; ++c) {
        labels[next] = "b" + std::to_string(next);
        edges.push_back({v, next, 1});
        layer.push_back({next, depth + 1});
        ++next;
      }
    }
    frontier = std::move(layer);
  }
  if (next != ball) throw std::logic_error("ball_path_graph: bad ball size");

  for (int i = 0; i < ball; ++i) {
    labels[ball + i] = "p" + std::to_string(i + 1);
    edges.push_back({i == 0 ? 0 : ball + i - 1, ball + i, 1});
  }
  return Multigraph(total, std::move(edges), std::move(labels));
}

Multigraph sierpinski_graph(int level) {
  if (level < 1 || level > 8) {
    throw std::invalid_argument("sierpinski_graph: level must be in [1, 8]");
  }
  // Lay the gasket on integer coordinates: the level-n triangle has side
  // 2^(n-1) and splits into three half-side copies sharing midpoints.
  using Point = std::pair<int, int>;
  std::map<Point, int> ids;
  std::vector<Point> points;
  auto id_of = [&](Point p) {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(points.size());
    ids.emplace(p, id);
    points.push_back(p);
    return id;
  };

  std::vector<std::pair<Point, Point>> unit_edges;
  auto emit = [&](auto&& self, Point a, Point b, Point c, int lvl) -> void {
    if (lvl == 1) {
      unit_edges.push_back({a, b});
      unit_edges.push_back({b, c});
      unit_edges.push_back({c, a});
      return;
    }
    auto mid = [](Point p, Point q) {
      return Point{(p.first + q.first) / 2, (p.second + q.second) / 2};
    };
    Point ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    self(self, a, ab, ca, lvl - 1);
    self(self, ab, b, bc, lvl - 1);
    self(self, ca, bc, c, lvl - 1);
  };
  int side = 1 << (level - 1);
  emit(emit, {0, 0}, {side, 0}, {0, side}, level);

  // Deterministic vertex order: sort unique points lexicographically.
  {
    std::vector<Point> all;
    for (const auto& [p, q] : unit_edges) {
      all.push_back(p);
      all.push_back(q);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const Point& p : all) id_of(p);
  }

  std::vector<Edge> edges;
  for (const auto& [p, q] : unit_edges) {
    edges.push_back({id_of(p), id_of(q), 1});
  }
  std::vector<std::string> labels(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    labels[i] = std::to_string(points[i].first) + "," +
                std::to_string(points[i].second);
  }
  return Multigraph(static_cast<int>(points.size()), std::move(edges),
                    std::move(labels));
}

StandardKind standard_kind_from_name(const std::string& name) {
  if (name == "cycle") return StandardKind::Cycle;
  if (name == "path") return StandardKind::Path;
  if (name == "complete") return StandardKind::Complete;
  if (name == "hypercube") return StandardKind::Hypercube;
  throw std::invalid_argument("unknown standard graph kind: " + name);
}

Multigraph standard_graph(StandardKind kind, int n) {
  std::vector<Edge> edges;
  switch (kind) {
    case StandardKind::Cycle: {
      if (n < 3 || n > 100000) {
        throw std::invalid_argument("cycle: n must be in [3, 100000]");
      }
      for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1});
      return Multigraph(n, std::move(edges), {}, /*transitive=*/true);
    }
    case StandardKind::Path: {
      if (n < 1 || n > 100000) {
        throw std::invalid_argument("path: n must be in [1, 100000]");
      }
      for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1});
      return Multigraph(n, std::move(edges));
    }
    case StandardKind::Complete: {
      if (n < 1 || n > 3000) {
        throw std::invalid_argument("complete: n must be in [1, 3000]");
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1});
      }
      return Multigraph(n, std::move(edges), {}, /*transitive=*/true);
    }
    case StandardKind::Hypercube: {
      if (n < 1 || n > 14) {
        throw std::invalid_argument("hypercube: dimension must be in [1, 14]");
      }
      int total = 1 << n;
      for (int v = 0; v < total; ++v) {
        for (int b = 0; b < n; ++b) {
          int u = v ^ (1 << b);
          if (v < u) edges.push_back({v, u, 1});
        }
      }
      return Multigraph(total, std::move(edges), {}, /*transitive=*/true);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace graphgap
