#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detsum/channel.hpp"
#include "detsum/detsum.hpp"
#include "detsum/lattice.hpp"

// vendored single header
#include "json.hpp"

namespace detsum::io {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "detsum 0.1.0";

/// Run metadata recorded into every output file ('#'-prefixed lines in CSV,
/// a "manifest" object in JSON). wall_time_ms is the only field allowed to
/// differ between reruns.
struct RunManifest {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
  double wall_time_ms = 0.0;
  std::vector<std::string> outputs;

  std::string csv_header() const;
  json to_json() const;
};

std::string config_hash(const std::string& canonical_command);

/// Radius/SNR grid syntax: "start:stop:gN" (geometric, N points) or
/// "start:stop:step" (arithmetic, inclusive).
std::vector<double> parse_grid(const std::string& text);

// Lattice descriptor JSON ({"n","k","basis",...,"construction","algebra"}).
json lattice_to_json(const MatrixLattice& lattice);
MatrixLattice lattice_from_json(const json& doc);
MatrixLattice load_lattice(const std::string& path);

/// Resolve a --code argument: a built-in name or a path to a descriptor.
MatrixLattice resolve_code(const std::string& code);

void write_shell_csv(const std::string& path, const ShellCountTable& table,
                     const RunManifest& manifest);
void write_detsum_csv(const std::string& path, const DetSumTable& table,
                      const RunManifest& manifest);
void write_bler_csv(const std::string& path, const std::vector<BlerRow>& rows,
                    const RunManifest& manifest);
void write_json(const std::string& path, const json& doc);

/// Parse "M,value" style columns back out of our CSV output (skipping '#'
/// comment lines).
std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                  std::vector<std::string>* header = nullptr);

/// Minimal JSON-schema checker covering the subset used by the shipped
/// schemas: type, properties, required, items, enum. Returns an error
/// description or nullopt when the document conforms.
std::optional<std::string> schema_violation(const json& doc, const json& schema);

}  // namespace detsum::io
