#include "fdn/structure.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fdn {

Digraph adjacency(const Mat& a, double zero_tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("adjacency: matrix must be square");
  }
  const int n = static_cast<int>(a.rows());
  Digraph g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(a(i, j)) > zero_tol) {
        g[static_cast<size_t>(i)].push_back(j);
      }
    }
  }
  return g;
}

namespace {

// Iterative Tarjan; components are produced in reverse topological order of
// the condensation (a component is finished only after everything it can
// reach).
struct TarjanState {
  const Digraph& g;
  std::vector<int> index, lowlink;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int next_index = 0;

  explicit TarjanState(const Digraph& graph)
      : g(graph),
        index(graph.size(), -1),
        lowlink(graph.size(), 0),
        on_stack(graph.size(), false) {}

  void run(int root) {
    struct Frame {
      int v;
      size_t edge;
    };
    std::vector<Frame> frames{{root, 0}};
    visit(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& edges = g[static_cast<size_t>(f.v)];
      if (f.edge < edges.size()) {
        const int w = edges[f.edge++];
        if (index[static_cast<size_t>(w)] < 0) {
          visit(w);
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<size_t>(w)]) {
          lowlink[static_cast<size_t>(f.v)] = std::min(
              lowlink[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
        }
      } else {
        const int v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          const int parent = frames.back().v;
          lowlink[static_cast<size_t>(parent)] = std::min(
              lowlink[static_cast<size_t>(parent)], lowlink[static_cast<size_t>(v)]);
        }
        if (lowlink[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = false;
            comp.push_back(w);
          } while (w != v);
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
      }
    }
  }

 private:
  void visit(int v) {
    index[static_cast<size_t>(v)] = next_index;
    lowlink[static_cast<size_t>(v)] = next_index;
    ++next_index;
    stack.push_back(v);
    on_stack[static_cast<size_t>(v)] = true;
  }
};

}  // namespace

BlockDecomposition decompose(const Mat& a, double zero_tol) {
  const Digraph g = adjacency(a, zero_tol);
  const int n = static_cast<int>(g.size());

  TarjanState tarjan(g);
  for (int v = 0; v < n; ++v) {
    if (tarjan.index[static_cast<size_t>(v)] < 0) tarjan.run(v);
  }
  // Tarjan finishes sinks first; reverse so sources come first and the
  // permuted matrix is upper block-triangular.
  std::reverse(tarjan.components.begin(), tarjan.components.end());

  BlockDecomposition dec;
  std::vector<int> block_of(static_cast<size_t>(n), -1);
  int pos = 0;
  for (size_t bi = 0; bi < tarjan.components.size(); ++bi) {
    const auto& comp = tarjan.components[bi];
    dec.blocks.push_back(Block{pos, pos + static_cast<int>(comp.size())});
    for (int v : comp) {
      dec.permutation.push_back(v);
      block_of[static_cast<size_t>(v)] = static_cast<int>(bi);
      ++pos;
    }
  }

  std::set<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int w : g[static_cast<size_t>(u)]) {
      const int bu = block_of[static_cast<size_t>(u)];
      const int bw = block_of[static_cast<size_t>(w)];
      if (bu != bw) edges.insert({bu, bw});
    }
  }
  dec.condensation_edges.assign(edges.begin(), edges.end());
  return dec;
}

Mat BlockDecomposition::permuted(const Mat& a) const {
  const auto n = static_cast<Eigen::Index>(permutation.size());
  Mat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = a(permutation[static_cast<size_t>(i)],
                    permutation[static_cast<size_t>(j)]);
    }
  }
  return out;
}

Mat BlockDecomposition::block_matrix(const Mat& a, int block) const {
  const Block& blk = blocks.at(static_cast<size_t>(block));
  Mat out(blk.size(), blk.size());
  for (int i = 0; i < blk.size(); ++i) {
    for (int j = 0; j < blk.size(); ++j) {
      out(i, j) = a(permutation[static_cast<size_t>(blk.begin + i)],
                    permutation[static_cast<size_t>(blk.begin + j)]);
    }
  }
  return out;
}

std::vector<int> BlockDecomposition::block_indices(int block) const {
  const Block& blk = blocks.at(static_cast<size_t>(block));
  return std::vector<int>(permutation.begin() + blk.begin,
                          permutation.begin() + blk.end);
}

DelayVec BlockDecomposition::block_delays(const DelayVec& m, int block) const {
  const Block& blk = blocks.at(static_cast<size_t>(block));
  DelayVec out;
  for (int k = blk.begin; k < blk.end; ++k) {
    out.push_back(m.at(static_cast<size_t>(permutation[static_cast<size_t>(k)])));
  }
  return out;
}

bool is_irreducible(const Mat& a, double zero_tol) {
  return decompose(a, zero_tol).blocks.size() == 1;
}

}  // namespace fdn
