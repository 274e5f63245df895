#include "locus/verdict.hpp"

#include <array>
#include <utility>

namespace locus {

namespace {

constexpr std::array<std::pair<CaseTag, const char*>, 10> kCaseNames{{
    {CaseTag::Wang8, "Wang8"},
    {CaseTag::A0eq1, "A0eq1"},
    {CaseTag::A0eq2_neg2, "A0eq2_neg2"},
    {CaseTag::A0eq2_pj, "A0eq2_pj"},
    {CaseTag::A0eq2_pj_neg2, "A0eq2_pj_neg2"},
    {CaseTag::A0ge3_2half, "A0ge3_2half"},
    {CaseTag::A0ge3_pj, "A0ge3_pj"},
    {CaseTag::A0ge3_pj_2, "A0ge3_pj_2"},
    {CaseTag::A0ge3_2pj, "A0ge3_2pj"},
    {CaseTag::A0ge3_2pj_2, "A0ge3_2pj_2"},
}};

constexpr std::array<std::pair<cert::Rule, const char*>, 3> kRuleNames{{
    {cert::Rule::Singleton, "singleton_classification"},
    {cert::Rule::Pair, "pair_classification"},
    {cert::Rule::SmallSet, "small_set_bound"},
}};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string to_string(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Fails: return "fails";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(CaseTag tag) {
    for (auto [t, name] : kCaseNames)
        if (t == tag) return name;
    return "?";
}

std::optional<CaseTag> case_tag_from_string(const std::string& s) {
    for (auto [t, name] : kCaseNames)
        if (s == name) return t;
    return std::nullopt;
}

namespace cert {

std::string to_string(Rule r) {
    for (auto [t, name] : kRuleNames)
        if (t == r) return name;
    return "?";
}

std::optional<Rule> rule_from_string(const std::string& s) {
    for (auto [t, name] : kRuleNames)
        if (s == name) return t;
    return std::nullopt;
}

}  // namespace cert

std::string certificate_kind(const Certificate& c) {
    return std::visit(overloaded{
                          [](const cert::PerfectPowerMember&) { return "perfect_power_member"; },
                          [](const cert::WangException&) { return "wang_exception"; },
                          [](const cert::Exceptional&) { return "exceptional_form"; },
                          [](const cert::Cover&) { return "hyperplane_cover"; },
                          [](const cert::UncoveredPoint&) { return "uncovered_point"; },
                          [](const cert::OddSubset&) { return "odd_subset"; },
                          [](const cert::SkalbaWitness&) { return "skalba_witness"; },
                          [](const cert::ComponentFailure&) { return "component_failure"; },
                          [](const cert::Lifted&) { return "lifted"; },
                          [](const cert::Refutation&) { return "refutation"; },
                          [](const cert::Evidence&) { return "evidence"; },
                      },
                      c);
}

Certificate remap_indices(const Certificate& c, const std::vector<std::size_t>& map) {
    auto remap_all = [&](std::vector<std::size_t> v) {
        for (auto& i : v) i = map.at(i);
        return v;
    };
    auto remap_verdict = [&](const std::shared_ptr<const Verdict>& v) {
        auto copy = std::make_shared<Verdict>(*v);
        copy->certificate = remap_indices(v->certificate, map);
        return std::shared_ptr<const Verdict>(std::move(copy));
    };
    return std::visit(overloaded{
                          [&](cert::PerfectPowerMember x) -> Certificate {
                              x.index = map.at(x.index);
                              return x;
                          },
                          [&](cert::WangException x) -> Certificate {
                              x.index = map.at(x.index);
                              return x;
                          },
                          [&](cert::Exceptional x) -> Certificate {
                              x.first = map.at(x.first);
                              x.second = map.at(x.second);
                              return x;
                          },
                          [&](cert::Cover x) -> Certificate {
                              x.indices = remap_all(x.indices);
                              return x;
                          },
                          [&](cert::UncoveredPoint x) -> Certificate {
                              x.system.indices = remap_all(x.system.indices);
                              return x;
                          },
                          [&](cert::OddSubset x) -> Certificate {
                              x.indices = remap_all(x.indices);
                              return x;
                          },
                          [&](cert::SkalbaWitness x) -> Certificate {
                              x.indices = remap_all(x.indices);
                              return x;
                          },
                          [&](cert::ComponentFailure x) -> Certificate {
                              x.component = remap_verdict(x.component);
                              return x;
                          },
                          [&](cert::Lifted x) -> Certificate {
                              // the base verdict indexes the root list, not the elements
                              x.indices = remap_all(x.indices);
                              return x;
                          },
                          [&](cert::Refutation x) -> Certificate { return x; },
                          [&](cert::Evidence x) -> Certificate { return x; },
                      },
                      c);
}

}  // namespace locus
