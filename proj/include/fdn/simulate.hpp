#pragma once

#include "fdn/model.hpp"

namespace fdn {

// Fixed-length complex FIFOs, one per delay line. Line i always holds
// exactly m_i samples; the oldest is the current line output.
class DelayLineBank {
 public:
  explicit DelayLineBank(const DelayVec& m);

  int lines() const { return static_cast<int>(lines_.size()); }
  long line_length(int i) const;
  Cplx oldest(int i) const;
  // Drops the oldest sample of line i and appends v.
  void push(int i, Cplx v);
  void clear();

  // Sum of |s|^2 over the samples stored in line i.
  double line_energy(int i) const;

 private:
  struct Line {
    std::vector<Cplx> buf;
    long head = 0;  // index of the oldest sample
  };
  std::vector<Line> lines_;
};

// One sample of the FDN recursion: reads the line heads s(n), emits
// y(n) = c^T s(n) + d x(n), and pushes A s(n) + b x(n) into the lines.
Cplx tick(const FdnSystem& sys, DelayLineBank& bank, Cplx x);

// Impulse response from zero state: y(0..num_samples-1) for x = delta.
std::vector<Cplx> render_ir(const FdnSystem& sys, long num_samples);

// Stored energy weighted by the inverse certificate diagonal:
// sum_i (1/e_i) * sum over line i of |s|^2. Constant under free running
// when A diag(e) A^H = diag(e).
double weighted_energy(const DelayLineBank& bank, const RVec& e);

}  // namespace fdn
