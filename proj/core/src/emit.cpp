#include <cmath>
#include <cstdio>
#include <fstream>

#include "ramlab/emit.hpp"
#include "ramlab/error.hpp"

namespace ramlab::emit {

std::string version() { return RAMLAB_VERSION; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvTable::str() const {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

namespace {

std::string provenance_comment(const Provenance& provenance) {
  return "provenance=" + provenance.to_json().dump();
}

std::string p_label(double p) { return std::isinf(p) ? "inf" : format_double(p); }

}  // namespace

CsvTable curve_table(const walk::MixingCurve& curve, const Provenance& provenance) {
  CsvTable t;
  std::string starts;
  for (std::size_t i = 0; i < curve.starts.size(); ++i) {
    if (i) starts += ';';
    starts += std::to_string(curve.starts[i]);
  }
  t.comments.push_back(std::string("kernel=") + std::string(walk::to_string(curve.kernel)) +
                       (curve.lazy_first_step ? "+lazy_first" : "") + " start=" + starts + " " +
                       provenance_comment(provenance));
  t.header = {"t", "reference", "d_tv"};
  for (double p : curve.p_list) t.header.push_back("d_" + p_label(p));
  t.header.push_back("d_inf");
  for (std::size_t s = 0; s < curve.tv.size(); ++s) {
    std::vector<std::string> row{std::to_string(s),
                                 curve.reference[s] < 0 ? "uniform" : "parity" + std::to_string(curve.reference[s]),
                                 format_double(curve.tv[s])};
    for (const auto& col : curve.lp) row.push_back(format_double(col[s]));
    row.push_back(format_double(curve.linf[s]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable profile_table(const std::vector<walk::ProfileSample>& samples, const Provenance& provenance) {
  CsvTable t;
  t.comments.push_back("kernel=srw " + provenance_comment(provenance));
  t.header = {"s", "t", "empirical", "predicted"};
  for (const auto& s : samples) {
    t.rows.push_back({format_double(s.s), std::to_string(s.t), format_double(s.empirical), format_double(s.predicted)});
  }
  return t;
}

CsvTable eigenvalue_table(const spectral::SpectrumReport& report, const Provenance& provenance) {
  CsvTable t;
  t.comments.push_back(std::string("partial=") + (report.partial ? "true" : "false") + " " +
                       provenance_comment(provenance));
  t.header = {"index", "lambda", "normalized"};
  const double scale = spectral::ramanujan_bound(report.d);
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    const double v = report.eigenvalues[i];
    t.rows.push_back({std::to_string(i), format_double(v), format_double(v / scale)});
  }
  return t;
}

CsvTable tree_table(const walk::TreeRadialTable& table, std::span<const double> p_list) {
  CsvTable t;
  t.comments.push_back("tree d=" + std::to_string(table.d) + " horizon=" + std::to_string(table.horizon));
  t.header = {"t", "return_probability"};
  for (double p : p_list) t.header.push_back("norm_" + p_label(p));
  t.header.push_back("distribution");
  for (std::size_t s = 0; s < table.rows.size(); ++s) {
    std::vector<std::string> row{std::to_string(s), format_double(table.return_probability(s))};
    for (double p : p_list) row.push_back(format_double(table.lp_norm(s, p)));
    std::string dist;
    for (std::size_t k = 0; k < table.rows[s].size(); ++k) {
      if (k) dist += ';';
      dist += format_double(table.rows[s][k]);
    }
    row.push_back(std::move(dist));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable theta_table(const spectral::BlockDecomposition& dec) {
  CsvTable t;
  t.header = {"block", "kind", "lambda", "theta_re", "theta_im", "theta_prime_re", "theta_prime_im", "alpha_abs"};
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    const auto& b = dec.blocks[i];
    t.rows.push_back({std::to_string(i), spectral::to_string(b.kind), format_double(b.lambda),
                      format_double(b.theta.real()), format_double(b.theta.imag()),
                      format_double(b.theta_prime.real()), format_double(b.theta_prime.imag()),
                      format_double(std::abs(b.alpha))});
  }
  return t;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

RunWriter::RunWriter(std::filesystem::path dir, nlohmann::ordered_json config)
    : dir_(std::move(dir)), config_(std::move(config)) {}

void RunWriter::add(const std::string& name, std::string content) {
  files_.emplace_back(name, std::move(content));
}

void RunWriter::add_json(const std::string& name, const nlohmann::ordered_json& j) {
  add(name, j.dump(2) + "\n");
}

void RunWriter::set_provenance(const Provenance& provenance) { provenance_ = provenance.to_json(); }

void RunWriter::commit() const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir_.string() + ": " + ec.message());
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (const auto& [name, content] : files_) {
    write_file(dir_ / name, content);
    outputs.push_back({{"file", name}, {"fnv1a64", hex64(fnv1a64(content))}, {"bytes", content.size()}});
  }
  nlohmann::ordered_json manifest;
  manifest["tool"] = "ramlab";
  manifest["version"] = version();
  manifest["config"] = config_;
  manifest["provenance"] = provenance_;
  manifest["outputs"] = outputs;
  write_file(dir_ / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace ramlab::emit
