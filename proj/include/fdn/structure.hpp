#pragma once

#include "fdn/model.hpp"

#include <utility>

namespace fdn {

// Adjacency lists over {0..N-1}; edge i -> j iff |a_ij| > zero_tol.
using Digraph = std::vector<std::vector<int>>;

// Signal graph of the feedback matrix. zero_tol = 0 keeps exact structural
// zeros only.
Digraph adjacency(const Mat& a, double zero_tol = 0.0);

// Half-open range [begin, end) into the permutation.
struct Block {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

// Permutation to block upper-triangular form. Diagonal blocks are the
// strongly connected components of the signal graph, laid out in a
// topological order of the condensation so every below-block entry of the
// permuted matrix is (numerically) zero.
struct BlockDecomposition {
  std::vector<int> permutation;  // permutation[k] = original index at slot k
  std::vector<Block> blocks;
  std::vector<std::pair<int, int>> condensation_edges;  // block -> block

  Mat permuted(const Mat& a) const;
  Mat block_matrix(const Mat& a, int block) const;
  std::vector<int> block_indices(int block) const;  // original indices
  DelayVec block_delays(const DelayVec& m, int block) const;
};

BlockDecomposition decompose(const Mat& a, double zero_tol = 0.0);

bool is_irreducible(const Mat& a, double zero_tol = 0.0);

}  // namespace fdn
