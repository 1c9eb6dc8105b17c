#include "prmi/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace prmi {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

CMatrix matrix_from_json(const json& rows, Index dim) {
    if (!rows.is_array() || static_cast<Index>(rows.size()) != dim)
        throw ParseError("\"matrix\" must be an array of " + std::to_string(dim) + " rows");
    CMatrix m(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != dim)
            throw ParseError("matrix row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
        for (Index j = 0; j < dim; ++j) {
            const json& e = row[static_cast<std::size_t>(j)];
            if (!e.is_object() || !e.contains("re") || !e.contains("im") || !e["re"].is_number() ||
                !e["im"].is_number())
                throw ParseError("matrix entries must be {\"re\": number, \"im\": number}");
            m(i, j) = Complex(e["re"].get<double>(), e["im"].get<double>());
        }
    }
    return m;
}

Index positive_dim(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) throw ParseError(std::string("missing integer \"") + key + "\"");
    const auto v = doc[key].get<long long>();
    if (v < 1) throw ValidationError("dimensions", std::string(key) + " must be >= 1");
    return static_cast<Index>(v);
}

HermitianOperator hermitian(CMatrix m) {
    try {
        return HermitianOperator(std::move(m));
    } catch (const InvalidOperator& e) {
        throw ValidationError("hermitian", e.what());
    }
}

double parse_number(const std::string& cell) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + cell + "'");
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size()) throw ParseError("trailing characters in '" + cell + "'");
    return v;
}

json records_to_json(const std::vector<IterationRecord>& records) {
    json out = json::array();
    for (const IterationRecord& r : records) {
        out.push_back({{"n", r.n},
                       {"x_n", r.x},
                       {"eps_n", r.eps.is_finite() ? json(r.eps.value()) : json(nullptr)},
                       {"q_n", r.q},
                       {"wall_ms", 1e3 * r.wall_seconds}});
    }
    return out;
}

template <class State, class ToJson>
json trace_json(const BasicTrace<State>& t, const char* mode, ToJson to_json) {
    const ExtendedReal eps = t.final_eps();
    json snaps = json::array();
    for (const auto& s : t.snapshots) snaps.push_back({{"n", s.n}, {"sigma", to_json(s.sigma)}, {"tau", to_json(s.tau)}});
    return {{"alpha", t.alpha},
            {"mode", mode},
            {"algorithm", t.algorithm},
            {"eps0", t.eps0},
            {"c0", t.c0},
            {"terminated_by", to_string(t.terminated_by)},
            {"final_x", t.final_x},
            {"final_eps", eps.is_finite() ? json(eps.value()) : json(nullptr)},
            {"iterations", t.iterations()},
            {"records", records_to_json(t.records)},
            {"states", std::move(snaps)}};
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed: " + path.string());
}

BipartiteState parse_state(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("state document must be a JSON object");
    const Index d_a = positive_dim(doc, "d_a");
    const Index d_b = positive_dim(doc, "d_b");
    if (!doc.contains("matrix")) throw ParseError("missing \"matrix\"");
    return BipartiteState(d_a, d_b, hermitian(matrix_from_json(doc["matrix"], d_a * d_b)));
}

BipartiteState load_state(const std::filesystem::path& path) { return parse_state(read_file(path)); }

json operator_to_json(const HermitianOperator& x) {
    json rows = json::array();
    for (Index i = 0; i < x.dim(); ++i) {
        json row = json::array();
        for (Index j = 0; j < x.dim(); ++j) row.push_back({{"re", x(i, j).real()}, {"im", x(i, j).imag()}});
        rows.push_back(std::move(row));
    }
    return rows;
}

json state_to_json(const BipartiteState& state) {
    return {{"d_a", state.d_a()}, {"d_b", state.d_b()}, {"matrix", operator_to_json(state.op())}};
}

void save_state(const BipartiteState& state, const std::filesystem::path& path) {
    write_file(path, state_to_json(state).dump(2) + "\n");
}

HermitianOperator parse_density(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("operator document must be a JSON object");
    const Index dim = positive_dim(doc, "dim");
    if (!doc.contains("matrix")) throw ParseError("missing \"matrix\"");
    HermitianOperator x = hermitian(matrix_from_json(doc["matrix"], dim));
    const double lmin = eig_hermitian(x).values(dim - 1);
    if (lmin < -1e-10) throw ValidationError("psd", "minimum eigenvalue " + std::to_string(lmin));
    if (std::abs(x.trace() - 1.0) > 1e-10) throw ValidationError("trace", "trace is " + std::to_string(x.trace()));
    return x;
}

HermitianOperator load_density(const std::filesystem::path& path) { return parse_density(read_file(path)); }

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(parse_number(cell));
        if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("ragged CSV rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty CSV");
    return rows;
}

JointPmf load_pmf(const std::filesystem::path& path) {
    const auto rows = parse_csv(read_file(path));
    Eigen::MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return JointPmf(m);
}

std::vector<double> load_pmf_row(const std::filesystem::path& path) {
    auto rows = parse_csv(read_file(path));
    if (rows.size() != 1) throw ParseError("initializer CSV must have exactly one row");
    return Pmf(std::move(rows.front())).vec();
}

json trace_to_json(const ConvergenceTrace& trace) {
    return trace_json(trace, "quantum", [](const HermitianOperator& x) { return operator_to_json(x); });
}

json trace_to_json(const ClassicalTrace& trace) {
    return trace_json(trace, "classical", [](const std::vector<double>& v) { return json(v); });
}

}  // namespace prmi
