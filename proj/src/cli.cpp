#include "locus/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "locus/arith.hpp"
#include "locus/classifier.hpp"
#include "locus/errors.hpp"
#include "locus/families.hpp"
#include "locus/prime_power.hpp"
#include "locus/sieve.hpp"
#include "locus/verify.hpp"

namespace locus::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<FactoredRational> load_elements(const RunConfig& c) {
    std::vector<std::string> texts = c.elements;
    if (c.file) {
        std::istringstream lines(read_file(*c.file));
        std::string line;
        while (std::getline(lines, line)) {
            line = trim(line);
            if (!line.empty() && line[0] != '#') texts.push_back(line);
        }
    }
    if (texts.empty()) throw InputError("no elements given (use --elem or --file)");
    std::vector<FactoredRational> out;
    for (const auto& t : texts) out.push_back(parse_rational(trim(t)));
    return out;
}

void require_n(const RunConfig& c) {
    if (c.n < 2) throw InputError("--n must be >= 2");
}

EngineOptions engine_options(const RunConfig& c) {
    EngineOptions o;
    o.covering.cover.ceiling = c.ceiling;
    o.covering.cover.threads = c.threads;
    o.covering.monte_carlo = c.monte_carlo;
    o.covering.monte_carlo_samples = c.monte_carlo_samples;
    o.evidence = c.evidence;
    o.evidence_bound = c.evidence_bound;
    return o;
}

int status_code(const Verdict& v) {
    if (verify::contradicts_evidence(v)) return kInconsistency;
    switch (v.status) {
        case Status::Holds: return kHolds;
        case Status::Fails: return kFails;
        case Status::Inconclusive: return kInconclusive;
    }
    return kInconsistency;
}

RunResult run_decide(const RunConfig& c) {
    require_n(c);
    const auto elements = load_elements(c);
    const auto v = classifier::decide(elements, c.n, engine_options(c));
    return {status_code(v), json_io::to_json(v, c.n, elements), {}};
}

RunResult run_sieve(const RunConfig& c) {
    if (c.n < 1) throw InputError("--n must be >= 1");
    const auto elements = load_elements(c);
    sieve::ScanOptions opts;
    opts.threads = c.threads;
    const auto report = sieve::scan(elements, c.n, c.lo, c.hi, {}, opts);
    return {kHolds, json_io::to_json(report), {}};
}

RunResult run_oracle(const RunConfig& c) {
    require_n(c);
    const auto f = arith::factor_small(static_cast<std::uint64_t>(c.n));
    if (f.size() != 1 || f[0].first == 2) throw InputError("oracle needs n = q^m for an odd prime q");
    const auto elements = load_elements(c);
    prime_power::OracleLimits limits;
    limits.max_elements = c.oracle_limit;
    auto v = prime_power::skalba_oracle(elements, f[0].first, f[0].second, limits);
    if (c.evidence) {
        v.evidence = sieve::scan(elements, c.n, 3, c.evidence_bound, v.excluded_primes);
    }
    return {status_code(v), json_io::to_json(v, c.n, elements), {}};
}

RunResult run_generate(const RunConfig& c) {
    std::vector<FactoredRational> fam;
    if (c.family == "cubic_quad") {
        fam = families::cubic_quad(c.a, c.b);
    } else if (c.family == "square_triple") {
        fam = families::square_triple(c.q1, c.q2);
    } else if (c.family == "lifted") {
        fam = families::lifted(load_elements(c), c.e);
    } else if (c.family == "odd_optimal") {
        fam = families::odd_optimal(c.q1, c.q2, c.n);
    } else if (c.family == "even_optimal") {
        fam = families::even_optimal(c.q1, c.q2, c.n);
    } else if (c.family == "exceptional_pair") {
        auto tag = case_tag_from_string(c.case_tag);
        if (!tag) throw InputError("unknown --case-tag '" + c.case_tag + "'");
        fam = families::exceptional_pair(c.n, *tag, c.pj, parse_rational(c.alpha1), parse_rational(c.alpha2));
    } else {
        throw InputError("unknown --family '" + c.family + "'");
    }
    return {kHolds, json_io::family_to_json(fam), {}};
}

RunResult run_verify(const RunConfig& c) {
    if (!c.file) throw InputError("verify-certificate needs --file <verdict.json>");
    Json doc;
    try {
        doc = Json::parse(read_file(*c.file));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("bad JSON: ") + e.what());
    }
    const auto parsed = json_io::verdict_from_json(doc);
    verify::Options opts;
    opts.enumeration_ceiling = c.ceiling;
    opts.oracle.max_elements = c.oracle_limit;
    const auto result = verify::check(parsed.verdict, parsed.n, parsed.elements, opts);
    Json out;
    out["valid"] = result.valid;
    out["kind"] = certificate_kind(parsed.verdict.certificate);
    out["reason"] = result.reason;
    return {result.valid ? 0 : 1, std::move(out), {}};
}

}  // namespace

RunResult run(const RunConfig& config) {
    try {
        if (config.command == "decide") return run_decide(config);
        if (config.command == "sieve") return run_sieve(config);
        if (config.command == "oracle") return run_oracle(config);
        if (config.command == "generate") return run_generate(config);
        if (config.command == "verify-certificate") return run_verify(config);
        return {kParseError, nullptr, "unknown command '" + config.command + "'"};
    } catch (const InputError& e) {
        return {kParseError, nullptr, e.what()};
    } catch (const CapacityError& e) {
        return {kCapacityError, nullptr, e.what()};
    } catch (const InconsistencyError& e) {
        return {kInconsistency, nullptr, e.what()};
    }
}

int main(int argc, char** argv) {
    CLI::App app{"Decide whether a finite set of rationals contains an n-th power locally at almost every prime."};
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--elem", c.elements, "Element as [+-]num[/den] (repeatable)");
        sub->add_option("--file", c.file, "File with one element per line");
        sub->add_option("--json", c.json_path, "Also write the JSON document here");
        sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* decide = app.add_subcommand("decide", "Decide a set for n-th powers");
    common(decide);
    decide->add_option("--n", c.n, "Exponent n >= 2")->required();
    decide->add_option("--ceiling", c.ceiling, "Covering enumeration ceiling")->check(CLI::PositiveNumber);
    decide->add_flag("--evidence", c.evidence, "Attach a sieve report");
    decide->add_option("--hi", c.evidence_bound, "Upper end of the evidence scan")->check(CLI::PositiveNumber);
    decide->add_flag("--monte-carlo", c.monte_carlo, "Sample oversized covering instances (never holds)");
    decide->add_option("--samples", c.monte_carlo_samples, "Monte Carlo samples")->check(CLI::PositiveNumber);

    auto* sieve_cmd = app.add_subcommand("sieve", "List primes where no element is a k-th power residue");
    common(sieve_cmd);
    sieve_cmd->add_option("--n", c.n, "Exponent k")->required();
    sieve_cmd->add_option("--lo", c.lo, "Lower end of the prime range");
    sieve_cmd->add_option("--hi", c.hi, "Upper end of the prime range");

    auto* oracle = app.add_subcommand("oracle", "Brute-force subset-pair oracle for n = q^m");
    common(oracle);
    oracle->add_option("--n", c.n, "Exponent q^m")->required();
    oracle->add_option("--oracle-limit", c.oracle_limit, "Maximum number of elements")->check(CLI::PositiveNumber);
    oracle->add_flag("--evidence", c.evidence, "Attach a sieve report");

    auto* generate = app.add_subcommand("generate", "Emit a witness family");
    generate->add_option("--family", c.family,
                         "cubic_quad | square_triple | lifted | odd_optimal | even_optimal | exceptional_pair")
        ->required();
    generate->add_option("--n", c.n, "Exponent n");
    generate->add_option("--a", c.a);
    generate->add_option("--b", c.b);
    generate->add_option("--q1", c.q1);
    generate->add_option("--q2", c.q2);
    generate->add_option("--e", c.e, "Lift exponent");
    generate->add_option("--elem", c.elements, "Base set for lifted");
    generate->add_option("--case-tag", c.case_tag);
    generate->add_option("--pj", c.pj, "Odd prime p_j of n used by the template");
    generate->add_option("--alpha1", c.alpha1);
    generate->add_option("--alpha2", c.alpha2);
    generate->add_option("--json", c.json_path);

    auto* verify_cmd = app.add_subcommand("verify-certificate", "Re-check a verdict document");
    verify_cmd->add_option("--file", c.file, "Verdict JSON")->required();
    verify_cmd->add_option("--ceiling", c.ceiling, "Covering enumeration ceiling")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--oracle-limit", c.oracle_limit)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }
    c.command = app.get_subcommands().front()->get_name();

    const auto result = run(c);
    if (!result.error.empty()) {
        std::cerr << "error: " << result.error << '\n';
        return result.exit_code;
    }
    const std::string text = result.document.dump(2);
    std::cout << text << '\n';
    if (c.json_path) {
        std::ofstream out(*c.json_path);
        if (!out) {
            std::cerr << "error: cannot write '" << *c.json_path << "'\n";
            return kParseError;
        }
        out << text << '\n';
    }
    return result.exit_code;
}

}  // namespace locus::cli
