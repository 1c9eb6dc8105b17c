#include "prmi/cli.hpp"

#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "prmi/am_engine.hpp"
#include "prmi/classical_rmi.hpp"
#include "prmi/state_io.hpp"

namespace prmi::cli {

namespace {

std::string format_real(double v, int precision = 6) {
    std::ostringstream ss;
    ss << std::setprecision(precision) << v;
    return ss.str();
}

bool certified_range(Mode mode, double alpha) {
    if (in_sublinear_range(alpha)) return true;
    return mode == Mode::classical ? alpha > 1.0 : in_linear_range(alpha);
}

void validate(const RunSpec& spec) {
    if (spec.alpha_list.empty()) throw InvalidConfig("at least one --alpha is required");
    if (!std::isfinite(spec.eps0) || !(spec.eps0 > 0.0)) throw InvalidConfig("--eps must be a positive real");
    if (spec.max_iter < 1) throw InvalidConfig("--max-iter must be >= 1");
    if (spec.input_path.empty()) throw InvalidConfig("an input file is required");
    for (double a : spec.alpha_list) {
        if (!std::isfinite(a) || !(a > 0.0)) throw InvalidConfig("alpha must lie in (0, inf), got " + format_real(a));
        if (a == 1.0) throw UnsupportedOrder("alpha = 1 is not supported");
        if (!spec.uncertified && !certified_range(spec.mode, a))
            throw InvalidConfig("alpha = " + format_real(a) +
                                " is outside the certified range; pass --uncertified to run anyway");
    }
    if (spec.init != "marginal" && spec.init != "uniform" && spec.init.rfind("file:", 0) != 0)
        throw InvalidConfig("--init must be marginal, uniform or file:PATH");
}

std::optional<std::string> init_file(const RunSpec& spec) {
    if (spec.init.rfind("file:", 0) == 0) return spec.init.substr(5);
    return std::nullopt;
}

template <class Trace>
void report(const Trace& trace, std::ostream& out) {
    const ExtendedReal eps = trace.final_eps();
    out << "alpha=" << format_real(trace.alpha) << " final_x=" << format_real(trace.final_x, 12)
        << " eps=" << (eps.is_finite() ? format_real(eps.value()) : std::string("inf"))
        << " iterations=" << trace.iterations() << " terminated_by=" << to_string(trace.terminated_by) << '\n';
}

ConvergenceTrace run_quantum(const BipartiteState& rho, const RunSpec& spec, double alpha,
                             const Initializer& init, SupportCutoff cut) {
    AmConfig config;
    config.alpha = alpha;
    config.eps0 = spec.eps0;
    config.init = init;
    config.max_iter = spec.max_iter;
    config.cut = cut;
    config.record_states = spec.record_states;
    return solve(rho, config, spec.uncertified);
}

ClassicalTrace run_classical(const JointPmf& p, const RunSpec& spec, double alpha) {
    ClassicalConfig config;
    config.alpha = alpha;
    config.eps0 = spec.eps0;
    config.max_iter = spec.max_iter;
    config.record_states = spec.record_states;
    if (spec.init == "uniform") config.init = InitKind::uniform;
    if (const auto f = init_file(spec)) {
        config.init = InitKind::explicit_state;
        config.init_pmf = load_pmf_row(*f);
    }
    return algorithm_classical(p, config, spec.uncertified);
}

int run_all(const RunSpec& spec, std::ostream& out) {
    validate(spec);
    bool all_certified = true;
    const auto emit = [&](const auto& trace) {
        write_file(trace_path_for(spec, trace.alpha), trace_to_json(trace).dump(2) + "\n");
        report(trace, out);
        all_certified = all_certified && trace.certified();
    };

    if (spec.mode == Mode::classical) {
        const JointPmf p = load_pmf(spec.input_path);
        for (double a : spec.alpha_list) emit(run_classical(p, spec, a));
    } else {
        const SupportCutoff cut = SupportCutoff::from_environment();
        const BipartiteState rho = load_state(spec.input_path);
        Initializer init;
        if (spec.init == "uniform") init = Initializer::uniform();
        if (const auto f = init_file(spec)) init = Initializer::explicit_state(load_density(*f));
        for (double a : spec.alpha_list) emit(run_quantum(rho, spec, a, init, cut));
    }
    return all_certified ? kExitOk : kExitNotCertified;
}

}  // namespace

std::filesystem::path trace_path_for(const RunSpec& spec, double alpha) {
    std::filesystem::path p(spec.trace_path);
    if (spec.alpha_list.size() <= 1) return p;
    const std::string stem = p.stem().string() + "_alpha" + format_real(alpha);
    return p.parent_path() / (stem + p.extension().string());
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        return run_all(spec, out);
    } catch (const MonotonicityViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Doubly minimized Petz Renyi mutual information via alternating minimization"};
    RunSpec spec;
    std::string mode = "quantum";
    app.add_option("--alpha", spec.alpha_list, "Renyi order (repeatable)")->required();
    app.add_option("--eps", spec.eps0, "Target certified accuracy")->capture_default_str();
    app.add_option("--init", spec.init, "Initializer: marginal | uniform | file:PATH")->capture_default_str();
    app.add_option("--mode", mode, "quantum (JSON state) or classical (CSV PMF)")
        ->check(CLI::IsMember({"quantum", "classical"}))
        ->capture_default_str();
    app.add_option("--trace-out", spec.trace_path, "Trace JSON destination")->capture_default_str();
    app.add_flag("--record-states", spec.record_states, "Store states of every iteration in the trace");
    app.add_option("--max-iter", spec.max_iter, "Iteration cap")->capture_default_str();
    app.add_flag("--uncertified", spec.uncertified, "Allow orders outside the certified ranges");
    app.add_option("input", spec.input_path, "State (JSON) or PMF (CSV) file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInvalid;
    }
    spec.mode = mode == "classical" ? Mode::classical : Mode::quantum;
    return run(spec, out, err);
}

}  // namespace prmi::cli
