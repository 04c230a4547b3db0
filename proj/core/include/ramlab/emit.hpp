#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ramlab/graph.hpp"
#include "ramlab/spectral.hpp"
#include "ramlab/tree.hpp"
#include "ramlab/walk.hpp"

namespace ramlab::emit {

// %.17g; infinities as "inf"/"-inf", NaN as "nan".
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> comments;  // emitted as "# ..." lines before the header
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

CsvTable curve_table(const walk::MixingCurve& curve, const Provenance& provenance);
CsvTable profile_table(const std::vector<walk::ProfileSample>& samples, const Provenance& provenance);
CsvTable eigenvalue_table(const spectral::SpectrumReport& report, const Provenance& provenance);
CsvTable tree_table(const walk::TreeRadialTable& table, std::span<const double> p_list);
CsvTable theta_table(const spectral::BlockDecomposition& dec);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// Collects outputs of one run and writes them with a manifest.json that
// echoes the resolved configuration and hashes every file.
class RunWriter {
 public:
  RunWriter(std::filesystem::path dir, nlohmann::ordered_json config);

  void add(const std::string& name, std::string content);
  void add_json(const std::string& name, const nlohmann::ordered_json& j);
  void set_provenance(const Provenance& provenance);
  // Writes every file then the manifest. Throws IoError.
  void commit() const;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  nlohmann::ordered_json config_;
  nlohmann::ordered_json provenance_;
  std::vector<std::pair<std::string, std::string>> files_;
};

void write_file(const std::filesystem::path& path, const std::string& content);
std::string version();

}  // namespace ramlab::emit
