#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "relcone/errors.hpp"

namespace relcone::cli {

namespace {

using io::Json;

class ConductorGuard {
public:
    explicit ConductorGuard(std::optional<long> cap) : previous_(max_conductor()) {
        if (cap) set_max_conductor(*cap);
    }
    ~ConductorGuard() { set_max_conductor(previous_); }
    ConductorGuard(const ConductorGuard&) = delete;
    ConductorGuard& operator=(const ConductorGuard&) = delete;

private:
    long previous_;
};

std::vector<Branch> branch_list(const Json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    const Json& v = j.at(key);
    std::vector<Branch> out;
    if (v.is_object()) {
        out.push_back(io::branch_from_json(v));
    } else if (v.is_array()) {
        for (const auto& b : v) out.push_back(io::branch_from_json(b));
    } else {
        throw ParseError(std::string("'") + key + "' must be a branch or a list of branches");
    }
    if (out.empty()) throw ParseError(std::string("'") + key + "' lists no branches");
    return out;
}

struct BranchSets {
    std::vector<Branch> xs;
    std::vector<Branch> ys;
};

BranchSets read_sets(const JobSpec& spec, const Json& input) {
    BranchSets s;
    s.xs = branch_list(input, "x");
    s.ys = input.contains("y") ? branch_list(input, "y") : s.xs;
    if (spec.trunc) {
        for (auto& b : s.xs) b = io::with_truncation(std::move(b), *spec.trunc);
        for (auto& b : s.ys) b = io::with_truncation(std::move(b), *spec.trunc);
    }
    return s;
}

ConeOptions cone_options(const JobSpec& spec) {
    ConeOptions o;
    if (spec.trunc) o.fixed_order = true;
    return o;
}

Json validation_entry(const Branch& x, const Branch& y, const LinearCone& cone, const OracleParams& p) {
    const SecantSample s = sample(x, y, p.radius, p.samples, p.seed);
    const ValidationReport r = validate(s, cone, p.tol);
    Json out = io::to_json(r);
    out["x"] = x.label;
    out["y"] = y.label;
    out["radius"] = p.radius;
    out["samples"] = p.samples;
    out["seed"] = p.seed;
    out["discarded"] = s.discarded;
    return out;
}

void check_oracle_params(const OracleParams& p) {
    if (!(p.radius > 0) || p.radius > 0.1) throw ParseError("--radius must lie in (0, 0.1]");
    if (p.samples == 0) throw ParseError("--samples must be positive");
    if (!(p.tol > 0)) throw ParseError("--tol must be positive");
}

Json run_cone(const JobSpec& spec, const Json& input, bool& validation_failed) {
    const BranchSets sets = read_sets(spec, input);
    const SetCone sc = cone_sets_detailed(sets.xs, sets.ys, cone_options(spec));
    Json out = io::to_json(sc.cone);
    Json pairs = Json::array();
    for (std::size_t i = 0; i < sets.xs.size(); ++i) {
        for (std::size_t j = 0; j < sets.ys.size(); ++j) {
            const PairCone& pc = sc.pairs[i * sets.ys.size() + j];
            Json pj;
            pj["x"] = sets.xs[i].label;
            pj["y"] = sets.ys[j].label;
            pj["case"] = to_string(pc.pair_case);
            pj["planes"] = pc.cone.plane_count();
            pj["lines"] = pc.cone.line_count();
            pairs.push_back(pj);
        }
    }
    out["pairs"] = pairs;
    out["warnings"] = sc.warnings;
    if (spec.validate) {
        check_oracle_params(spec.oracle);
        Json reports = Json::array();
        bool pass = true;
        for (std::size_t i = 0; i < sets.xs.size(); ++i) {
            for (std::size_t j = 0; j < sets.ys.size(); ++j) {
                const PairCone& pc = sc.pairs[i * sets.ys.size() + j];
                Json r = validation_entry(sets.xs[i], sets.ys[j], pc.cone, spec.oracle);
                pass = pass && r.at("pass").get<bool>();
                reports.push_back(std::move(r));
            }
        }
        out["validation"] = {{"pass", pass}, {"reports", reports}};
        validation_failed = !pass;
    }
    return out;
}

Json run_join(const JobSpec& spec, const Json& input) {
    CurveData data = io::curve_data_from_json(input);
    if (spec.trunc) {
        for (auto& pd : data.points) {
            for (auto& b : pd.xs) b = io::with_truncation(std::move(b), *spec.trunc);
            for (auto& b : pd.ys) b = io::with_truncation(std::move(b), *spec.trunc);
        }
    }
    return io::to_json(join_report(data, cone_options(spec)));
}

Json run_oracle(const JobSpec& spec, const Json& input, bool& validation_failed) {
    check_oracle_params(spec.oracle);
    const BranchSets sets = read_sets(spec, input);
    if (!input.contains("cone")) throw ParseError("oracle input needs a 'cone' to validate against");
    const LinearCone cone = io::cone_from_json(input.at("cone"));
    Json reports = Json::array();
    bool pass = true;
    for (const auto& x : sets.xs) {
        for (const auto& y : sets.ys) {
            if (!cone.empty() && cone.ambient() != x.dimension()) {
                throw ParseError("cone and branch '" + x.label + "' live in different dimensions");
            }
            Json r = validation_entry(x, y, cone, spec.oracle);
            pass = pass && r.at("pass").get<bool>();
            reports.push_back(std::move(r));
        }
    }
    validation_failed = !pass;
    return Json{{"pass", pass}, {"reports", reports}, {"tol", spec.oracle.tol}};
}

Json run_normalize(const JobSpec& spec, const Json& input) {
    const BranchSets sets = read_sets(spec, input);
    Json pairs = Json::array();
    for (const auto& x : sets.xs) {
        for (const auto& y : sets.ys) {
            Json pj;
            try {
                pj = io::to_json(normalize_pair(x, y));
            } catch (const PrecisionExhausted& e) {
                throw PrecisionExhausted("normalize pair ('" + x.label + "', '" + y.label + "'): " + e.what());
            } catch (const FieldExtensionRequired& e) {
                throw FieldExtensionRequired("normalize pair ('" + x.label + "', '" + y.label + "'): " + e.what());
            }
            pj["x_label"] = x.label;
            pj["y_label"] = y.label;
            pairs.push_back(std::move(pj));
        }
    }
    return Json{{"pairs", pairs}};
}

const char* command_name(Command c) {
    switch (c) {
        case Command::Cone: return "cone";
        case Command::Join: return "join";
        case Command::Oracle: return "oracle";
        case Command::Normalize: return "normalize";
    }
    return "?";
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
    if (name == "cone") return Command::Cone;
    if (name == "join") return Command::Join;
    if (name == "oracle") return Command::Oracle;
    if (name == "normalize") return Command::Normalize;
    return std::nullopt;
}

RunResult run_document(const JobSpec& spec, const io::Json& input) {
    RunResult result;
    const std::string op = command_name(spec.command);
    auto fail = [&](int code, const std::string& message) {
        result.exit_code = code;
        result.output.clear();
        result.error = op + ": " + message;
        return result;
    };
    try {
        if (spec.trunc && *spec.trunc < 1) return fail(kInput, "--trunc must be positive");
        if (spec.max_conductor && *spec.max_conductor < 1) return fail(kInput, "--max-conductor must be positive");
        ConductorGuard guard(spec.max_conductor);
        if (!input.is_object()) return fail(kInput, "input must be a JSON object");
        bool validation_failed = false;
        Json doc;
        switch (spec.command) {
            case Command::Cone: doc = run_cone(spec, input, validation_failed); break;
            case Command::Join: doc = run_join(spec, input); break;
            case Command::Oracle: doc = run_oracle(spec, input, validation_failed); break;
            case Command::Normalize: doc = run_normalize(spec, input); break;
        }
        result.output = spec.format == Format::Json ? doc.dump(2) + "\n" : render_text(spec.command, doc);
        if (validation_failed) {
            result.exit_code = kValidationFailed;
            result.error = op + ": oracle validation failed (soundness above --tol)";
        }
        return result;
    } catch (const PrecisionExhausted& e) {
        return fail(kPrecision, e.what());
    } catch (const FieldExtensionRequired& e) {
        return fail(kFieldExtension, e.what());
    } catch (const ConductorLimitExceeded& e) {
        return fail(kFieldExtension, e.what());
    } catch (const Error& e) {
        return fail(kInput, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(kInput, std::string("malformed input: ") + e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kInput, e.what());
    } catch (const std::exception& e) {
        return fail(kInternal, std::string("internal error: ") + e.what());
    }
}

RunResult run(const JobSpec& spec) {
    Json input;
    try {
        if (spec.input_path == "-" || spec.input_path.empty()) {
            input = Json::parse(std::cin);
        } else {
            std::ifstream in(spec.input_path);
            if (!in) {
                return RunResult{kInput, "", std::string(command_name(spec.command)) + ": cannot open " + spec.input_path};
            }
            input = Json::parse(in);
        }
    } catch (const nlohmann::json::exception& e) {
        return RunResult{kInput, "", std::string(command_name(spec.command)) + ": invalid JSON: " + e.what()};
    }
    return run_document(spec, input);
}

}  // namespace relcone::cli
