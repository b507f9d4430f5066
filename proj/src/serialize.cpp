#include "fdn/serialize.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fdn {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void fail_at(const std::string& path, int line, int col,
                          const std::string& msg) {
  throw ParseError(path + ":" + std::to_string(line) + ":" +
                   std::to_string(col) + ": " + msg);
}

Cplx json_to_cplx(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError(std::string(what) +
                     ": complex values must be [re, im] pairs");
  }
  return Cplx{j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json cplx_to_json(Cplx v) {
  return nlohmann::json::array({v.real(), v.imag()});
}

CVec json_to_cvec(const nlohmann::json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw ParseError(std::string(what) + ": expected an array of length " +
                     std::to_string(n));
  }
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = json_to_cplx(j[static_cast<size_t>(i)], what);
  }
  return v;
}

nlohmann::json cvec_to_json(const CVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(cplx_to_json(v[i]));
  return out;
}

bool looks_like_json(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' || ch == '[';
  }
  return false;
}

Mat csv_matrix(const std::string& path, const std::string& text) {
  std::vector<std::vector<Cplx>> rows;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Cplx> row;
    std::istringstream cells(line);
    std::string cell;
    int col = 1;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(parse_complex_token(cell));
      } catch (const std::exception& e) {
        fail_at(path, line_no, col, e.what());
      }
      col += static_cast<int>(cell.size()) + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail_at(path, 1, 1, "no matrix rows found");
  const size_t n = rows.size();
  Mat a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      fail_at(path, static_cast<int>(i) + 1, 1,
              "matrix must be square: row has " +
                  std::to_string(rows[i].size()) + " entries, expected " +
                  std::to_string(n));
    }
    for (size_t j = 0; j < n; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return a;
}

nlohmann::json parse_json_file(const std::string& path,
                               const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Recover line/column from the byte offset for the diagnostic.
    int line = 1, col = 1;
    for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail_at(path, line, col, e.what());
  }
}

}  // namespace

Cplx parse_complex_token(const std::string& token) {
  std::string s;
  for (char ch : token) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty complex token");

  const bool has_unit = (s.back() == 'j' || s.back() == 'i');
  // Split at the last top-level sign (not the leading one, not an
  // exponent sign).
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }

  const auto parse_real = [](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("malformed complex token");
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size()) {
      throw std::invalid_argument("malformed number '" + part + "'");
    }
    return v;
  };
  const auto parse_imag_part = [&](std::string part) {
    part.pop_back();  // drop the unit
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part);
  };

  if (!has_unit) {
    if (split != std::string::npos) {
      throw std::invalid_argument("malformed complex token '" + s + "'");
    }
    return Cplx{parse_real(s), 0.0};
  }
  if (split == std::string::npos) {
    return Cplx{0.0, parse_imag_part(s)};
  }
  return Cplx{parse_real(s.substr(0, split)),
              parse_imag_part(s.substr(split))};
}

Mat matrix_from_json(const nlohmann::json& j) {
  if (j.contains("A")) {
    // System file: pull out the feedback matrix.
    return system_from_json(j).A;
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("matrix file: missing integer field 'n'");
  }
  const Eigen::Index n = j["n"].get<Eigen::Index>();
  if (n < 1) throw ParseError("matrix file: n must be >= 1");
  if (!j.contains("entries") || !j["entries"].is_array() ||
      static_cast<Eigen::Index>(j["entries"].size()) != n * n) {
    throw ParseError("matrix file: 'entries' must hold n*n [re, im] pairs");
  }
  Mat a(n, n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    a(k / n, k % n) = json_to_cplx(j["entries"][static_cast<size_t>(k)],
                                   "matrix entries");
  }
  return a;
}

FdnSystem system_from_json(const nlohmann::json& j) {
  if (!j.contains("A")) throw ParseError("system file: missing field 'A'");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("system file: missing integer field 'n'");
  }
  const Eigen::Index n = j["n"].get<Eigen::Index>();
  if (n < 1) throw ParseError("system file: n must be >= 1");
  if (!j["A"].is_array() || static_cast<Eigen::Index>(j["A"].size()) != n * n) {
    throw ParseError("system file: 'A' must hold n*n [re, im] pairs");
  }
  Mat a(n, n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    a(k / n, k % n) = json_to_cplx(j["A"][static_cast<size_t>(k)], "A");
  }
  if (!j.contains("m") || !j["m"].is_array() ||
      static_cast<Eigen::Index>(j["m"].size()) != n) {
    throw ParseError("system file: 'm' must hold n integer delays");
  }
  DelayVec m;
  for (const auto& mi : j["m"]) {
    if (!mi.is_number_integer()) {
      throw ParseError("system file: delays must be integers (samples)");
    }
    m.push_back(mi.get<int>());
  }
  CVec b = j.contains("b") ? json_to_cvec(j["b"], n, "b") : CVec::Ones(n);
  CVec c = j.contains("c") ? json_to_cvec(j["c"], n, "c") : CVec::Ones(n);
  Cplx d = j.contains("d") ? json_to_cplx(j["d"], "d") : Cplx{0.0, 0.0};
  try {
    return FdnSystem(std::move(a), std::move(b), std::move(c), d,
                     std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("system file: ") + e.what());
  }
}

Mat load_matrix(const std::string& path) {
  const std::string text = read_file(path);
  if (looks_like_json(text)) {
    return matrix_from_json(parse_json_file(path, text));
  }
  return csv_matrix(path, text);
}

FdnSystem load_system(const std::string& path) {
  const std::string text = read_file(path);
  if (!looks_like_json(text)) {
    throw ParseError(path + ": system files must be JSON");
  }
  return system_from_json(parse_json_file(path, text));
}

nlohmann::json matrix_to_json(const Mat& a) {
  nlohmann::json j;
  j["n"] = a.rows();
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      entries.push_back(cplx_to_json(a(i, k)));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

nlohmann::json system_to_json(const FdnSystem& sys) {
  nlohmann::json j;
  j["n"] = sys.size();
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < sys.A.rows(); ++i) {
    for (Eigen::Index k = 0; k < sys.A.cols(); ++k) {
      a.push_back(cplx_to_json(sys.A(i, k)));
    }
  }
  j["A"] = std::move(a);
  j["b"] = cvec_to_json(sys.b);
  j["c"] = cvec_to_json(sys.c);
  j["d"] = cplx_to_json(sys.d);
  j["m"] = sys.m;
  return j;
}

void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

nlohmann::json report_to_json(const Mat& a, const UnilosslessReport& report) {
  nlohmann::json j;
  j["verdict"] = report.unilossless ? "unilossless" : "not_unilossless";
  j["tolerances"] = {{"tol", report.options.tol},
                     {"zero_tol", report.options.zero_tol}};

  nlohmann::json blocks = nlohmann::json::array();
  for (const BlockReport& br : report.blocks) {
    nlohmann::json blk;
    blk["indices"] = br.indices;
    blk["perron"] = br.perron;
    blk["residual"] = br.residual;
    blk["pass"] = br.pass;
    if (br.certificate_e) {
      blk["certificate_e"] = std::vector<double>(
          br.certificate_e->begin(), br.certificate_e->end());
    } else {
      blk["certificate_e"] = nullptr;
    }
    blocks.push_back(std::move(blk));
  }
  j["blocks"] = std::move(blocks);

  nlohmann::json dec;
  dec["permutation"] = report.decomposition.permutation;
  nlohmann::json ranges = nlohmann::json::array();
  for (const Block& b : report.decomposition.blocks) {
    ranges.push_back({{"begin", b.begin}, {"end", b.end}});
  }
  dec["blocks"] = std::move(ranges);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [from, to] : report.decomposition.condensation_edges) {
    edges.push_back({from, to});
  }
  dec["condensation_edges"] = std::move(edges);
  j["decomposition"] = std::move(dec);

  Eigen::ComplexEigenSolver<Mat> solver(a, false);
  std::vector<double> mags;
  for (const Cplx& ev : solver.eigenvalues()) mags.push_back(std::abs(ev));
  std::sort(mags.begin(), mags.end());
  j["eigenvalue_magnitudes"] = std::move(mags);
  return j;
}

double recheck_certificates(const Mat& a, const nlohmann::json& report) {
  if (!report.contains("blocks") || !report["blocks"].is_array()) {
    throw ParseError("report: missing 'blocks'");
  }
  double worst = 0.0;
  for (const auto& blk : report["blocks"]) {
    if (!blk.contains("certificate_e") || blk["certificate_e"].is_null()) {
      continue;
    }
    const auto idx = blk["indices"].get<std::vector<int>>();
    const auto cert = blk["certificate_e"].get<std::vector<double>>();
    if (idx.size() != cert.size()) {
      throw ParseError("report: certificate length does not match block");
    }
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    Mat sub(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < k; ++c) {
        const int ir = idx[static_cast<size_t>(r)];
        const int ic = idx[static_cast<size_t>(c)];
        if (ir < 0 || ir >= a.rows() || ic < 0 || ic >= a.rows()) {
          throw ParseError("report: block index out of range for matrix");
        }
        sub(r, c) = a(ir, ic);
      }
    }
    Mat e = Mat::Zero(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      e(r, r) = cert[static_cast<size_t>(r)];
    }
    worst = std::max(worst,
                     (sub * e * sub.adjoint() - e).norm() / e.norm());
  }
  return worst;
}

std::string region_csv(const std::vector<BoundaryPoint>& points) {
  std::ostringstream out;
  out.precision(12);
  out << "theta_rad,radius,a11_re,a11_im\n";
  for (const BoundaryPoint& p : points) {
    out << p.theta << "," << p.radius << "," << p.a11.real() << ","
        << p.a11.imag() << "\n";
  }
  return out.str();
}

}  // namespace fdn
