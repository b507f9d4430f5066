// Python bindings for the analysis core. Matrices and vectors cross the
// boundary as numpy arrays; polynomials as 1-D complex arrays of ascending
// coefficients.

#include "fdn/charpoly.hpp"
#include "fdn/model.hpp"
#include "fdn/region.hpp"
#include "fdn/roots.hpp"
#include "fdn/simulate.hpp"
#include "fdn/statespace.hpp"
#include "fdn/structure.hpp"
#include "fdn/topologies.hpp"
#include "fdn/unilossless.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace fdn;

namespace {

Poly poly_from_array(const CVec& coeffs) {
  return Poly(std::vector<Cplx>(coeffs.begin(), coeffs.end()));
}

CVec poly_to_array(const Poly& p) {
  CVec out(static_cast<Eigen::Index>(p.coeffs().size()));
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    out[k] = p.coeffs()[static_cast<size_t>(k)];
  }
  return out;
}

CVec roots_to_array(const RootSet& rs) {
  CVec out(static_cast<Eigen::Index>(rs.roots.size()));
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    out[k] = rs.roots[static_cast<size_t>(k)];
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_fdnkit, m) {
  m.doc() = "Feedback delay network analysis toolkit";

  py::class_<FdnSystem>(m, "FdnSystem")
      .def(py::init<Mat, DelayVec>(), py::arg("A"), py::arg("m"))
      .def(py::init<Mat, CVec, CVec, Cplx, DelayVec>(), py::arg("A"),
           py::arg("b"), py::arg("c"), py::arg("d"), py::arg("m"))
      .def_readonly("A", &FdnSystem::A)
      .def_readonly("b", &FdnSystem::b)
      .def_readonly("c", &FdnSystem::c)
      .def_readonly("d", &FdnSystem::d)
      .def_readonly("m", &FdnSystem::m)
      .def_property_readonly("order", &FdnSystem::order)
      .def("__repr__", [](const FdnSystem& s) {
        return "<FdnSystem N=" + std::to_string(s.size()) +
               " order=" + std::to_string(s.order()) + ">";
      });

  py::class_<Block>(m, "Block")
      .def_readonly("begin", &Block::begin)
      .def_readonly("end", &Block::end);

  py::class_<BlockDecomposition>(m, "BlockDecomposition")
      .def_readonly("permutation", &BlockDecomposition::permutation)
      .def_readonly("blocks", &BlockDecomposition::blocks)
      .def_readonly("condensation_edges",
                    &BlockDecomposition::condensation_edges)
      .def("block_indices", &BlockDecomposition::block_indices)
      .def("permuted", &BlockDecomposition::permuted);

  py::class_<BlockReport>(m, "BlockReport")
      .def_readonly("indices", &BlockReport::indices)
      .def_readonly("perron", &BlockReport::perron)
      .def_readonly("residual", &BlockReport::residual)
      .def_readonly("certificate_e", &BlockReport::certificate_e)
      .def_readonly("passed", &BlockReport::pass);

  py::class_<UnilosslessReport>(m, "UnilosslessReport")
      .def_readonly("unilossless", &UnilosslessReport::unilossless)
      .def_readonly("blocks", &UnilosslessReport::blocks)
      .def_readonly("decomposition", &UnilosslessReport::decomposition)
      .def("__repr__", [](const UnilosslessReport& r) {
        return std::string("<UnilosslessReport ") +
               (r.unilossless ? "unilossless" : "not_unilossless") + ", " +
               std::to_string(r.blocks.size()) + " block(s)>";
      });

  // model
  m.def("system_order", &system_order, py::arg("m"));
  m.def("delay_matrix_eval", &delay_matrix_eval, py::arg("m"), py::arg("z"));
  m.def("transfer_eval", &transfer_eval, py::arg("system"), py::arg("z"));

  // charpoly
  m.def(
      "generalized_charpoly",
      [](const Mat& a, const DelayVec& m) {
        return poly_to_array(generalized_charpoly(a, m));
      },
      py::arg("A"), py::arg("m"),
      "Coefficients of det[diag(z^m_i) - A], ascending powers");
  m.def(
      "charpoly_oracle",
      [](const Mat& a, const DelayVec& m) {
        return poly_to_array(charpoly_oracle(a, m));
      },
      py::arg("A"), py::arg("m"));
  m.def(
      "zeros_poly",
      [](const FdnSystem& sys) { return poly_to_array(zeros_poly(sys)); },
      py::arg("system"));
  m.def(
      "principal_minor",
      [](const Mat& a, const IndexSet& indices) {
        return principal_minor(a, indices);
      },
      py::arg("A"), py::arg("indices"));
  m.def(
      "is_self_inversive",
      [](const CVec& coeffs, double tol) {
        return is_self_inversive(poly_from_array(coeffs), tol);
      },
      py::arg("coeffs"), py::arg("tol") = 1e-9);

  // roots
  m.def(
      "poly_roots",
      [](const CVec& coeffs) {
        return roots_to_array(poly_roots(poly_from_array(coeffs)));
      },
      py::arg("coeffs"));
  m.def(
      "is_lossless_poly",
      [](const CVec& coeffs, double tol) {
        const auto v = is_lossless_poly(poly_from_array(coeffs), tol);
        return py::make_tuple(v.lossless, v.max_deviation);
      },
      py::arg("coeffs"), py::arg("tol") = 1e-8,
      "Returns (lossless, max | |r|-1 |)");
  m.def(
      "cohn_is_unimodular",
      [](const CVec& coeffs, double tol) {
        return cohn_is_unimodular(poly_from_array(coeffs), tol);
      },
      py::arg("coeffs"), py::arg("tol") = 1e-8);

  // structure
  m.def("adjacency", &adjacency, py::arg("A"), py::arg("zero_tol") = 0.0);
  m.def("decompose", &decompose, py::arg("A"), py::arg("zero_tol") = 0.0);
  m.def("is_irreducible", &is_irreducible, py::arg("A"),
        py::arg("zero_tol") = 0.0);

  // unilossless
  m.def(
      "is_unilossless",
      [](const Mat& a, double tol, double zero_tol) {
        return is_unilossless(a, {.tol = tol, .zero_tol = zero_tol});
      },
      py::arg("A"), py::arg("tol") = 1e-8, py::arg("zero_tol") = 0.0);
  m.def("unitary_similarity_certificate", &unitary_similarity_certificate,
        py::arg("B"), py::arg("tol") = 1e-8);
  m.def("diagonal_conjugate", &diagonal_conjugate, py::arg("A"), py::arg("e"));
  m.def("rotate_feedback", &rotate_feedback, py::arg("A"), py::arg("gamma"),
        py::arg("m"));
  m.def("io_gain_transform", &io_gain_transform, py::arg("b"), py::arg("c"),
        py::arg("e"));

  // statespace + simulate
  m.def(
      "statespace_poles",
      [](const FdnSystem& sys) {
        return roots_to_array(statespace_poles(sys));
      },
      py::arg("system"));
  m.def(
      "render_ir",
      [](const FdnSystem& sys, long samples) {
        const auto ir = render_ir(sys, samples);
        CVec out(static_cast<Eigen::Index>(ir.size()));
        for (Eigen::Index k = 0; k < out.size(); ++k) {
          out[k] = ir[static_cast<size_t>(k)];
        }
        return out;
      },
      py::arg("system"), py::arg("samples"));

  // topologies
  m.def(
      "schroeder",
      [](const std::array<double, 6>& g, const std::array<int, 6>& mm) {
        return schroeder(g, mm);
      },
      py::arg("g"), py::arg("m"));
  m.def("comb_filter_eval", &comb_filter_eval, py::arg("m"), py::arg("g_b"),
        py::arg("g_f"), py::arg("z"));
  m.def(
      "allpass_fdn",
      [](const Mat& a, const std::vector<double>& g, const DelayVec& mm,
         const DelayVec& m_prime) {
        const AllpassFdn ap = allpass_fdn(a, g, mm, m_prime);
        return py::make_tuple(ap.a_ap, ap.m_ap);
      },
      py::arg("A"), py::arg("g"), py::arg("m"), py::arg("m_prime"));
  m.def("sdn_even", &sdn_even, py::arg("y"));
  m.def("sdn_householder", &sdn_householder, py::arg("y"));
  m.def("conjugate_involutory", &conjugate_involutory, py::arg("M"));
  m.def("random_unitary", &random_unitary, py::arg("n"), py::arg("seed"));
  m.def("random_unilossless", &random_unilossless, py::arg("n"),
        py::arg("seed"));
  m.def("expm", &expm, py::arg("M"));

  // region
  m.def(
      "region_boundary",
      [](Cplx eps, int k, int angles, double radial_tol) {
        RegionSweepOptions opts;
        opts.angles = angles;
        opts.radial_tol = radial_tol;
        const auto pts = region_boundary(eps, k, opts);
        Eigen::MatrixXd out(static_cast<Eigen::Index>(pts.size()), 4);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
          const auto& p = pts[static_cast<size_t>(i)];
          out(i, 0) = p.theta;
          out(i, 1) = p.radius;
          out(i, 2) = p.a11.real();
          out(i, 3) = p.a11.imag();
        }
        return out;
      },
      py::arg("eps"), py::arg("k"), py::arg("angles") = 256,
      py::arg("radial_tol") = 1e-6,
      "Rows of (theta, radius, a11_re, a11_im)");
  m.def(
      "region_point_lossless",
      [](Cplx a11, Cplx eps, int m1, int m2) {
        return region_point_lossless(a11, eps, m1, m2);
      },
      py::arg("a11"), py::arg("eps"), py::arg("m1"), py::arg("m2"));
}
