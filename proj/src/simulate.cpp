#include "fdn/simulate.hpp"

#include <stdexcept>

namespace fdn {

DelayLineBank::DelayLineBank(const DelayVec& m) {
  validate_delays(m);
  lines_.reserve(m.size());
  for (int mi : m) {
    Line line;
    line.buf.assign(static_cast<size_t>(mi), Cplx{0.0, 0.0});
    lines_.push_back(std::move(line));
  }
}

long DelayLineBank::line_length(int i) const {
  return static_cast<long>(lines_.at(static_cast<size_t>(i)).buf.size());
}

Cplx DelayLineBank::oldest(int i) const {
  const Line& line = lines_.at(static_cast<size_t>(i));
  return line.buf[static_cast<size_t>(line.head)];
}

void DelayLineBank::push(int i, Cplx v) {
  Line& line = lines_.at(static_cast<size_t>(i));
  line.buf[static_cast<size_t>(line.head)] = v;
  line.head = (line.head + 1) % static_cast<long>(line.buf.size());
}

void DelayLineBank::clear() {
  for (Line& line : lines_) {
    std::fill(line.buf.begin(), line.buf.end(), Cplx{0.0, 0.0});
    line.head = 0;
  }
}

double DelayLineBank::line_energy(int i) const {
  const Line& line = lines_.at(static_cast<size_t>(i));
  double acc = 0.0;
  for (const Cplx& s : line.buf) acc += std::norm(s);
  return acc;
}

Cplx tick(const FdnSystem& sys, DelayLineBank& bank, Cplx x) {
  const int n = sys.size();
  if (bank.lines() != n) {
    throw std::invalid_argument("tick: bank does not match system size");
  }
  CVec heads(n);
  for (int i = 0; i < n; ++i) heads[i] = bank.oldest(i);
  const Cplx y = (sys.c.transpose() * heads).value() + sys.d * x;
  const CVec fed = sys.A * heads + sys.b * x;
  for (int i = 0; i < n; ++i) bank.push(i, fed[i]);
  return y;
}

std::vector<Cplx> render_ir(const FdnSystem& sys, long num_samples) {
  if (num_samples < 1) {
    throw std::invalid_argument("render_ir: need at least one sample");
  }
  DelayLineBank bank(sys.m);
  std::vector<Cplx> out;
  out.reserve(static_cast<size_t>(num_samples));
  for (long k = 0; k < num_samples; ++k) {
    const Cplx x = (k == 0) ? Cplx{1.0, 0.0} : Cplx{0.0, 0.0};
    out.push_back(tick(sys, bank, x));
  }
  return out;
}

double weighted_energy(const DelayLineBank& bank, const RVec& e) {
  if (e.size() != bank.lines()) {
    throw std::invalid_argument("weighted_energy: weight length mismatch");
  }
  double acc = 0.0;
  for (int i = 0; i < bank.lines(); ++i) {
    if (e[i] <= 0.0) {
      throw std::domain_error("weighted_energy: weights must be positive");
    }
    acc += bank.line_energy(i) / e[i];
  }
  return acc;
}

}  // namespace fdn
