#include "locus/json_io.hpp"

#include <memory>
#include <string>

#include "locus/errors.hpp"

namespace locus::json_io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json rationals(std::span<const FactoredRational> xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_json(x));
    return out;
}

const char* reduction_name(cert::Reduction r) { return r == cert::Reduction::Class ? "class" : "strip"; }

Json cover_fields(const cert::Cover& c, const char* kind) {
    Json j;
    j["kind"] = kind;
    j["modulus"] = c.modulus;
    j["reduction"] = reduction_name(c.reduction);
    j["sign_coordinate"] = c.sign_coordinate;
    j["support"] = c.support;
    j["indices"] = c.indices;
    j["coeffs"] = c.coeffs;
    j["bases"] = rationals(c.bases);
    return j;
}

// Nested verdicts (component failures, lift bases) omit n and elements.
Json nested(const Verdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["certificate"] = to_json(v.certificate);
    j["excluded_primes"] = v.excluded_primes;
    return j;
}

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing JSON field '") + key + "'");
    return doc.at(key);
}

template <class T>
T get(const Json& doc, const char* key) {
    try {
        return field(doc, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad JSON field '") + key + "': " + e.what());
    }
}

FactoredRational rational(const Json& j) {
    if (!j.is_string()) throw InputError("rationals must be JSON strings");
    return parse_rational(j.get<std::string>());
}

std::vector<FactoredRational> rational_list(const Json& doc, const char* key) {
    const Json& arr = field(doc, key);
    if (!arr.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
    std::vector<FactoredRational> out;
    for (const auto& x : arr) out.push_back(rational(x));
    return out;
}

Status status_from(const std::string& s) {
    if (s == "holds") return Status::Holds;
    if (s == "fails") return Status::Fails;
    if (s == "inconclusive") return Status::Inconclusive;
    throw InputError("unknown status '" + s + "'");
}

cert::Cover cover_from(const Json& j) {
    cert::Cover c;
    c.modulus = get<std::int64_t>(j, "modulus");
    const auto red = get<std::string>(j, "reduction");
    if (red == "class") {
        c.reduction = cert::Reduction::Class;
    } else if (red == "strip") {
        c.reduction = cert::Reduction::Strip;
    } else {
        throw InputError("unknown reduction '" + red + "'");
    }
    c.sign_coordinate = get<bool>(j, "sign_coordinate");
    c.support = get<std::vector<std::uint64_t>>(j, "support");
    c.indices = get<std::vector<std::size_t>>(j, "indices");
    c.coeffs = get<std::vector<std::vector<std::int64_t>>>(j, "coeffs");
    c.bases = rational_list(j, "bases");
    return c;
}

Verdict nested_from(const Json& j) {
    Verdict v;
    v.status = status_from(get<std::string>(j, "status"));
    v.certificate = certificate_from_json(field(j, "certificate"));
    v.excluded_primes = get<std::vector<std::uint64_t>>(j, "excluded_primes");
    return v;
}

}  // namespace

Json to_json(const FactoredRational& x) { return x.to_string(); }

Json to_json(const sieve::SieveReport& report) {
    Json params;
    params["elements"] = rationals(report.params.elements);
    params["k"] = report.params.k;
    params["lo"] = report.params.lo;
    params["hi"] = report.params.hi;
    params["excluded"] = report.params.excluded;
    Json j;
    j["params"] = std::move(params);
    j["failing_primes"] = report.failing_primes;
    j["tested_count"] = report.tested_count;
    j["failing_density"] = report.failing_density();
    return j;
}

Json to_json(const Certificate& c) {
    return std::visit(
        overloaded{
            [](const cert::PerfectPowerMember& x) {
                Json j;
                j["kind"] = "perfect_power_member";
                j["index"] = x.index;
                j["root"] = to_json(x.root);
                j["exponent"] = x.exponent;
                return j;
            },
            [](const cert::WangException& x) {
                Json j;
                j["kind"] = "wang_exception";
                j["index"] = x.index;
                j["b"] = to_json(x.b);
                j["n"] = x.n;
                return j;
            },
            [](const cert::Exceptional& x) {
                Json j;
                j["kind"] = "exceptional_form";
                j["case_tag"] = to_string(x.form.case_tag);
                j["pj"] = x.form.pj;
                j["alpha1"] = to_json(x.form.alpha1);
                j["alpha2"] = to_json(x.form.alpha2);
                j["first"] = x.first;
                j["second"] = x.second;
                return j;
            },
            [](const cert::Cover& x) { return cover_fields(x, "hyperplane_cover"); },
            [](const cert::UncoveredPoint& x) {
                Json j = cover_fields(x.system, "uncovered_point");
                j["point"] = x.point;
                return j;
            },
            [](const cert::OddSubset& x) {
                Json j;
                j["kind"] = "odd_subset";
                j["indices"] = x.indices;
                j["root"] = to_json(x.root);
                return j;
            },
            [](const cert::SkalbaWitness& x) {
                Json j;
                j["kind"] = "skalba_witness";
                j["q"] = x.q;
                j["m"] = x.m;
                j["indices"] = x.indices;
                j["c"] = x.c;
                return j;
            },
            [](const cert::ComponentFailure& x) {
                Json j;
                j["kind"] = "component_failure";
                j["q"] = x.q;
                j["m"] = x.m;
                j["component"] = nested(*x.component);
                return j;
            },
            [](const cert::Lifted& x) {
                Json j;
                j["kind"] = "lifted";
                j["e"] = x.e;
                j["base_exponent"] = x.base_exponent;
                j["indices"] = x.indices;
                j["roots"] = rationals(x.roots);
                j["base"] = nested(*x.base);
                return j;
            },
            [](const cert::Refutation& x) {
                Json j;
                j["kind"] = "refutation";
                j["rule"] = cert::to_string(x.rule);
                j["counterexample"] = x.counterexample ? Json(*x.counterexample) : Json(nullptr);
                return j;
            },
            [](const cert::Evidence& x) {
                Json j;
                j["kind"] = "evidence";
                j["reason"] = x.reason;
                if (x.monte_carlo) {
                    Json mc;
                    mc["samples"] = x.monte_carlo->samples;
                    mc["seed"] = x.monte_carlo->seed;
                    mc["uncovered_fraction_bound"] = x.monte_carlo->uncovered_fraction_bound;
                    j["monte_carlo"] = std::move(mc);
                }
                return j;
            },
        },
        c);
}

Json to_json(const Verdict& v, std::int64_t n, std::span<const FactoredRational> elements) {
    Json j;
    j["status"] = to_string(v.status);
    j["certificate"] = to_json(v.certificate);
    j["excluded_primes"] = v.excluded_primes;
    j["n"] = n;
    j["elements"] = rationals(elements);
    if (v.evidence) j["evidence"] = to_json(*v.evidence);
    return j;
}

Json family_to_json(std::span<const FactoredRational> family) { return rationals(family); }

Certificate certificate_from_json(const Json& j) {
    const auto kind = get<std::string>(j, "kind");
    if (kind == "perfect_power_member") {
        return cert::PerfectPowerMember{get<std::size_t>(j, "index"), rational(field(j, "root")),
                                        get<std::int64_t>(j, "exponent")};
    }
    if (kind == "wang_exception") {
        return cert::WangException{get<std::size_t>(j, "index"), rational(field(j, "b")), get<std::int64_t>(j, "n")};
    }
    if (kind == "exceptional_form") {
        auto tag = case_tag_from_string(get<std::string>(j, "case_tag"));
        if (!tag) throw InputError("unknown case_tag");
        ExceptionalForm form{*tag, get<std::uint64_t>(j, "pj"), rational(field(j, "alpha1")),
                             rational(field(j, "alpha2"))};
        return cert::Exceptional{std::move(form), get<std::size_t>(j, "first"), get<std::size_t>(j, "second")};
    }
    if (kind == "hyperplane_cover") return cover_from(j);
    if (kind == "uncovered_point") {
        return cert::UncoveredPoint{cover_from(j), get<std::vector<std::int64_t>>(j, "point")};
    }
    if (kind == "odd_subset") {
        return cert::OddSubset{get<std::vector<std::size_t>>(j, "indices"), rational(field(j, "root"))};
    }
    if (kind == "skalba_witness") {
        return cert::SkalbaWitness{get<std::uint64_t>(j, "q"), get<std::int64_t>(j, "m"),
                                   get<std::vector<std::size_t>>(j, "indices"),
                                   get<std::vector<std::int64_t>>(j, "c")};
    }
    if (kind == "component_failure") {
        return cert::ComponentFailure{get<std::uint64_t>(j, "q"), get<std::int64_t>(j, "m"),
                                      std::make_shared<const Verdict>(nested_from(field(j, "component")))};
    }
    if (kind == "lifted") {
        return cert::Lifted{get<std::int64_t>(j, "e"), get<std::int64_t>(j, "base_exponent"),
                            get<std::vector<std::size_t>>(j, "indices"), rational_list(j, "roots"),
                            std::make_shared<const Verdict>(nested_from(field(j, "base")))};
    }
    if (kind == "refutation") {
        auto rule = cert::rule_from_string(get<std::string>(j, "rule"));
        if (!rule) throw InputError("unknown refutation rule");
        std::optional<std::uint64_t> ce;
        if (j.contains("counterexample") && !j.at("counterexample").is_null()) {
            ce = get<std::uint64_t>(j, "counterexample");
        }
        return cert::Refutation{*rule, ce};
    }
    if (kind == "evidence") {
        cert::Evidence e{get<std::string>(j, "reason"), std::nullopt};
        if (j.contains("monte_carlo")) {
            const Json& mc = j.at("monte_carlo");
            e.monte_carlo = cert::MonteCarlo{get<std::uint64_t>(mc, "samples"), get<std::uint64_t>(mc, "seed"),
                                             get<std::string>(mc, "uncovered_fraction_bound")};
        }
        return e;
    }
    throw InputError("unknown certificate kind '" + kind + "'");
}

sieve::SieveReport report_from_json(const Json& j) {
    sieve::SieveReport r;
    const Json& params = field(j, "params");
    r.params.elements = rational_list(params, "elements");
    r.params.k = get<std::int64_t>(params, "k");
    r.params.lo = get<std::uint64_t>(params, "lo");
    r.params.hi = get<std::uint64_t>(params, "hi");
    r.params.excluded = get<std::vector<std::uint64_t>>(params, "excluded");
    r.failing_primes = get<std::vector<std::uint64_t>>(j, "failing_primes");
    r.tested_count = get<std::uint64_t>(j, "tested_count");
    return r;
}

VerdictDocument verdict_from_json(const Json& j) {
    VerdictDocument doc;
    doc.verdict = nested_from(j);
    doc.n = get<std::int64_t>(j, "n");
    doc.elements = rational_list(j, "elements");
    if (j.contains("evidence")) doc.verdict.evidence = report_from_json(j.at("evidence"));
    return doc;
}

}  // namespace locus::json_io
