#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "prmi/am_engine.hpp"
#include "prmi/classical_rmi.hpp"
#include "prmi/operator_core.hpp"

namespace prmi {

// File formats:
//   state      {"d_a": int, "d_b": int, "matrix": [[{"re": x, "im": y}, ...], ...]}
//              row-major in the product basis |a>|b>, b fastest;
//   operator   {"dim": int, "matrix": ...} (explicit quantum initializer on A);
//   PMF        CSV matrix of nonnegative floats, rows indexed by x.
//
// Parse failures raise ParseError; semantic problems raise ValidationError
// naming the violated invariant.

BipartiteState parse_state(const std::string& text);
BipartiteState load_state(const std::filesystem::path& path);
nlohmann::json state_to_json(const BipartiteState& state);
void save_state(const BipartiteState& state, const std::filesystem::path& path);

/// Density operator (PSD, unit trace) from an {"dim", "matrix"} document.
HermitianOperator parse_density(const std::string& text);
HermitianOperator load_density(const std::filesystem::path& path);

/// Rows of nonnegative floats separated by commas; blank lines ignored.
std::vector<std::vector<double>> parse_csv(const std::string& text);
JointPmf load_pmf(const std::filesystem::path& path);
/// Single-row CSV used as an explicit classical initializer.
std::vector<double> load_pmf_row(const std::filesystem::path& path);

nlohmann::json operator_to_json(const HermitianOperator& x);

/// Trace document: top-level summary plus one record per iteration with fields
/// n, x_n, eps_n (null while unbounded), q_n, wall_ms.
nlohmann::json trace_to_json(const ConvergenceTrace& trace);
nlohmann::json trace_to_json(const ClassicalTrace& trace);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace prmi
