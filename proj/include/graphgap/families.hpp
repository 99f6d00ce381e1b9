#pragma once

#include <string>
#include <vector>

#include "graphgap/multigraph.hpp"

namespace graphgap {

/// Index of a declared generator, or kIdentitySection for the trivial one.
inline constexpr int kIdentitySection = -1;

struct GeneratorRule {
  std::string name;
  std::vector<int> root_perm;  // permutation of {0..d-1}
  std::vector<int> sections;   // one entry per letter; kIdentitySection or index
};

/// A tree automorphism per generator, given by a root permutation plus one
/// section per subtree. Drives the Schreier-graph constructions below.
struct WreathRecursionSpec {
  int alphabet_size = 0;
  std::vector<GeneratorRule> generators;

  int generator_index(const std::string& name) const;
};

/// A vertex of the level-n tree: a word of n letters over {0..d-1},
/// stored as digit characters ('0' + letter).
using TreeWord = std::string;

/// Applies a generator to a word: the root permutation acts on the first
/// letter and the section selected by the original first letter acts on the
/// rest. The empty word is fixed by everything.
TreeWord act(const WreathRecursionSpec& spec, int generator, const TreeWord& w);
TreeWord act(const WreathRecursionSpec& spec, const std::string& generator,
             const TreeWord& w);

/// Parses the text format, one generator per line:
///   alphabet <d>
///   name = (cycles) [sec_0, sec_1, ..., sec_{d-1}]
/// with the permutation in cycle notation (() for identity) and `1` meaning
/// the identity section. Reports errors with line and column.
WreathRecursionSpec parse_spec(const std::string& text);

/// Action graph on all d^n level-n words (lexicographic vertex order).
/// Every generator must act as an involution at this level: each 2-cycle
/// contributes one edge and each fixed word one loop, with multiplicities
/// accumulated across generators.
Multigraph schreier_graph(const WreathRecursionSpec& spec, int level);

/// Towers-of-Hanoi spec on three letters: a = (0 1) [1, 1, a],
/// b = (0 2) [1, b, 1], c = (1 2) [c, 1, 1].
extern const char* const kHanoiSpecText;

/// First Grigorchuk group: a swaps the first letter; b = (a, c), c = (a, d),
/// d = (1, b).
extern const char* const kGrigorchukSpecText;

const WreathRecursionSpec& hanoi_spec();
const WreathRecursionSpec& grigorchuk_spec();

/// 3^n vertices, diameter 2^n - 1; loops at 2^n (a), 1^n (b), 0^n (c).
Multigraph hanoi_graph(int level);  // 1 <= level <= 8

/// 2^n vertices, diameter 2^n - 1, 4-regular counting multi-edges and loops.
Multigraph grigorchuk_graph(int level);  // 1 <= level <= 12

/// Cayley graph of Z_2 wr Z_n with the lamp flip s and the shift t; the
/// undirected t-edge set covers t and t^-1 together. n * 2^n vertices.
Multigraph lamplighter_graph(int n);  // 2 <= n <= 10

/// Radius-n ball of the 3-regular tree (3 * 2^n - 2 vertices, diameter 2n)
/// with a path of as many vertices attached at the center. The ball occupies
/// vertex indices [0, 3 * 2^n - 2).
Multigraph ball_path_graph(int n);  // 1 <= n <= 10

int ball_path_ball_size(int n);

/// Level-n gasket graph: three level-(n-1) copies sharing corner vertices,
/// no connecting edges and no loops; (3^n + 3) / 2 vertices.
Multigraph sierpinski_graph(int level);  // 1 <= level <= 8

enum class StandardKind { Cycle, Path, Complete, Hypercube };

StandardKind standard_kind_from_name(const std::string& name);

/// Baseline graphs; n is the vertex count (cycle, path, complete) or the
/// dimension (hypercube). Cycle, complete and hypercube are marked
/// vertex-transitive.
Multigraph standard_graph(StandardKind kind, int n);

}  // namespace graphgap
