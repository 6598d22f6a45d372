#include "detsum/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "detsum/constructions.hpp"
#include "detsum/errors.hpp"

namespace detsum::io {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << text;
}

}  // namespace

std::string config_hash(const std::string& canonical_command) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : canonical_command) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string RunManifest::csv_header() const {
  std::ostringstream os;
  os << "# command: " << command << "\n";
  os << "# config_hash: " << config_hash << "\n";
  os << "# seed: " << seed << "\n";
  os << "# version: " << version << "\n";
  os << "# wall_time_ms: " << fmt("%.3f", wall_time_ms) << "\n";
  return os.str();
}

json RunManifest::to_json() const {
  return json{{"command", command},
              {"config_hash", config_hash},
              {"seed", seed},
              {"version", version},
              {"wall_time_ms", wall_time_ms},
              {"outputs", outputs}};
}

std::vector<double> parse_grid(const std::string& text) {
  auto bad = [&] { return UsageError("bad grid '" + text + "' (want start:stop:step or start:stop:gN)"); };
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() == 1) {
    try {
      return {std::stod(parts[0])};
    } catch (...) {
      throw bad();
    }
  }
  if (parts.size() != 3) throw bad();
  double start, stop;
  try {
    start = std::stod(parts[0]);
    stop = std::stod(parts[1]);
  } catch (...) {
    throw bad();
  }
  std::vector<double> grid;
  if (!parts[2].empty() && parts[2][0] == 'g') {
    int npts;
    try {
      npts = std::stoi(parts[2].substr(1));
    } catch (...) {
      throw bad();
    }
    if (npts < 2 || start <= 0 || stop <= start) throw bad();
    double ratio = std::pow(stop / start, 1.0 / (npts - 1));
    for (int i = 0; i < npts; ++i) grid.push_back(start * std::pow(ratio, i));
    grid.back() = stop;
  } else {
    double step;
    try {
      step = std::stod(parts[2]);
    } catch (...) {
      throw bad();
    }
    if (!(step > 0) || stop < start) throw bad();
    for (double v = start; v <= stop + 1e-9 * step; v += step) grid.push_back(v);
  }
  return grid;
}

json lattice_to_json(const MatrixLattice& lattice) {
  json basis = json::array();
  for (const auto& b : lattice.basis) {
    json mat = json::array();
    for (int r = 0; r < lattice.n; ++r)
      for (int c = 0; c < lattice.n; ++c)
        mat.push_back(json::array({b(r, c).real(), b(r, c).imag()}));
    basis.push_back(mat);
  }
  json doc{{"n", lattice.n}, {"k", lattice.k}, {"basis", basis}};
  if (lattice.tag != "raw") doc["construction"] = lattice.tag;
  return doc;
}

MatrixLattice lattice_from_json(const json& doc) {
  if (doc.contains("algebra")) {
    const auto& alg = doc.at("algebra");
    std::string center_s = alg.at("center").get<std::string>();
    BaseField center;
    if (center_s == "Q")
      center = BaseField::Q;
    else if (center_s == "Qi")
      center = BaseField::Qi;
    else
      throw UsageError("algebra center must be \"Q\" or \"Qi\"");
    CyclicAlgebraSpec spec = user_algebra(alg.at("a").get<std::int64_t>(),
                                          alg.at("gamma").get<std::int64_t>(), center);
    std::string tag = doc.value("construction", std::string("user-algebra"));
    return cyclic_algebra_lattice(spec, tag);
  }
  if (doc.contains("construction")) {
    auto code = builtin_from_name(doc.at("construction").get<std::string>());
    if (code) return builtin(*code);
  }
  const int n = doc.at("n").get<int>();
  const int k = doc.at("k").get<int>();
  const auto& basis = doc.at("basis");
  if (static_cast<int>(basis.size()) != k) throw UsageError("descriptor k != basis size");
  std::vector<ComplexMatrix> mats;
  for (const auto& mat : basis) {
    if (static_cast<int>(mat.size()) != n * n)
      throw UsageError("basis matrix entry count != n^2");
    ComplexMatrix m(n, n);
    int p = 0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        m(r, c) = std::complex<double>(mat[p][0].get<double>(), mat[p][1].get<double>());
        ++p;
      }
    mats.push_back(std::move(m));
  }
  return build_lattice(std::move(mats), nullptr, doc.value("construction", std::string("raw")));
}

MatrixLattice load_lattice(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open lattice descriptor " + path);
  json doc = json::parse(is, nullptr, true, /*skip_comments=*/true);
  return lattice_from_json(doc);
}

MatrixLattice resolve_code(const std::string& code) {
  if (auto b = builtin_from_name(code)) return builtin(*b);
  if (code.size() > 5 && code.substr(code.size() - 5) == ".json") return load_lattice(code);
  throw UsageError("unknown code '" + code +
                   "' (builtins: gaussian, nf-sqrt5, nf-sqrt2, alamouti, l1, l2, golden-order; "
                   "or a .json descriptor path)");
}

void write_shell_csv(const std::string& path, const ShellCountTable& table,
                     const RunManifest& manifest) {
  std::ostringstream os;
  os << manifest.csv_header() << "M,count\n";
  for (std::size_t i = 0; i < table.radii.size(); ++i)
    os << fmt("%.6g", table.radii[i]) << "," << table.counts[i] << "\n";
  write_text(path, os.str());
}

void write_detsum_csv(const std::string& path, const DetSumTable& table,
                      const RunManifest& manifest) {
  std::ostringstream os;
  os << manifest.csv_header();
  os << "# lattice: " << table.tag << "\n# m: " << table.m
     << "\n# exact: " << (table.exact ? "yes" : "no");
  if (table.skipped) os << "\n# skipped_zero_determinants: " << table.skipped;
  os << "\nM,count,sum,unit_count,normalized\n";
  for (const auto& r : table.rows)
    os << fmt("%.6g", r.radius) << "," << r.count << "," << fmt("%.10g", r.sum) << ","
       << r.unit_count << "," << fmt("%.10g", r.normalized) << "\n";
  write_text(path, os.str());
}

void write_bler_csv(const std::string& path, const std::vector<BlerRow>& rows,
                    const RunManifest& manifest) {
  std::ostringstream os;
  os << manifest.csv_header() << "snr_db,blocks,errors,bler,ci95\n";
  for (const auto& r : rows)
    os << fmt("%.6g", r.snr_db) << "," << r.blocks << "," << r.block_errors << ","
       << fmt("%.10g", r.bler) << "," << fmt("%.10g", r.ci95_half_width) << "\n";
  write_text(path, os.str());
}

void write_json(const std::string& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                  std::vector<std::string>* header) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open " + path);
  std::vector<std::vector<double>> cols;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur.push_back(c);
      }
    }
    cells.push_back(cur);
    if (!have_header) {
      have_header = true;
      if (header) *header = cells;
      cols.assign(cells.size(), {});
      // header row is non-numeric by construction
      continue;
    }
    for (std::size_t i = 0; i < cells.size() && i < cols.size(); ++i)
      cols[i].push_back(std::stod(cells[i]));
  }
  return cols;
}

std::optional<std::string> schema_violation(const json& doc, const json& schema) {
  if (schema.contains("type")) {
    std::string t = schema.at("type").get<std::string>();
    bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
              (t == "string" && doc.is_string()) || (t == "number" && doc.is_number()) ||
              (t == "integer" && doc.is_number_integer()) || (t == "boolean" && doc.is_boolean()) ||
              (t == "null" && doc.is_null());
    if (!ok) return "expected type " + t + ", got " + std::string(doc.type_name());
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema.at("enum"))
      if (v == doc) ok = true;
    if (!ok) return "value " + doc.dump() + " not in enum";
  }
  if (schema.contains("required"))
    for (const auto& key : schema.at("required"))
      if (!doc.contains(key.get<std::string>()))
        return "missing required key " + key.get<std::string>();
  if (schema.contains("properties") && doc.is_object())
    for (auto it = schema.at("properties").begin(); it != schema.at("properties").end(); ++it)
      if (doc.contains(it.key()))
        if (auto err = schema_violation(doc.at(it.key()), it.value()))
          return it.key() + ": " + *err;
  if (schema.contains("items") && doc.is_array())
    for (std::size_t i = 0; i < doc.size(); ++i)
      if (auto err = schema_violation(doc[i], schema.at("items")))
        return "[" + std::to_string(i) + "]: " + *err;
  return std::nullopt;
}

}  // namespace detsum::io
