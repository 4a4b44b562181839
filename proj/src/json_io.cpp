#include "cst/json_io.hpp"

#include <algorithm>

#include "json.hpp"

namespace cst {

namespace {

using nlohmann::json; // std::map-backed: object keys serialize sorted

json nfa_to_json(const Nfa& a) {
    json out;
    out["states"] = a.num_states;
    out["initial"] = json::array();
    for (int q : a.initial) out["initial"].push_back(q);
    out["finals"] = json::array();
    for (int q : a.finals) out["finals"].push_back(q);
    auto tr = a.transitions;
    std::sort(tr.begin(), tr.end());
    tr.erase(std::unique(tr.begin(), tr.end()), tr.end());
    out["transitions"] = json::array();
    for (const auto& t : tr) out["transitions"].push_back(json::array({t.from, t.symbol, t.to}));
    return out;
}

Nfa nfa_from_json(const json& v) {
    Nfa a;
    a.num_states = v.at("states").get<int>();
    for (const auto& q : v.at("initial")) a.initial.insert(q.get<int>());
    for (const auto& q : v.at("finals")) a.finals.insert(q.get<int>());
    for (const auto& t : v.at("transitions"))
        a.add_transition(t.at(0).get<int>(), t.at(1).get<std::string>(), t.at(2).get<int>());
    return a;
}

json words_to_json(const std::set<std::vector<std::string>>& words) {
    json out = json::array();
    for (const auto& w : words) out.push_back(w); // set order is already sorted
    return out;
}

std::set<std::vector<std::string>> words_from_json(const json& v) {
    std::set<std::vector<std::string>> out;
    for (const auto& w : v) out.insert(w.get<std::vector<std::string>>());
    return out;
}

json slt_to_json(const SltDescriptor& d) {
    json out;
    out["k"] = d.k;
    out["W"] = words_to_json(d.whole);
    out["I"] = words_to_json(d.prefixes);
    out["T"] = words_to_json(d.suffixes);
    out["F"] = words_to_json(d.factors);
    return out;
}

SltDescriptor slt_from_json(const json& v) {
    SltDescriptor d;
    d.k = v.at("k").get<int>();
    d.whole = words_from_json(v.at("W"));
    d.prefixes = words_from_json(v.at("I"));
    d.suffixes = words_from_json(v.at("T"));
    d.factors = words_from_json(v.at("F"));
    return d;
}

std::string big(const BigInt& v) { return bigint_to_string(v); }

[[noreturn]] void bad(const std::string& what) { throw ParseError(what, 1, 1); }

} // namespace

std::string cst_to_json(const CstDecomposition& d) {
    json out;
    out["schemaVersion"] = 1;
    out["mode"] = d.params.mode;
    out["sigma"] = json::array();
    for (char c : d.sigma) out["sigma"].push_back(std::string(1, c));
    out["params"] = {{"m", d.params.m},
                     {"j", big(d.params.j)},
                     {"q", d.params.q},
                     {"n", big(d.stats.n_conceptual)},
                     {"l", big(d.params.j * (BigInt)d.sigma.size())}};
    out["rho"] = json::array();
    for (const auto& [name, letter] : d.rho)
        out["rho"].push_back(json::array({name, std::string(1, letter)}));
    out["T"]["nfa"] = nfa_to_json(d.t);
    if (d.t_slt) out["T"]["slt"] = slt_to_json(*d.t_slt);
    out["stats"] = {{"capHit", d.params.cap_hit},
                    {"cnfNts", d.stats.cnf_nts},
                    {"cnfRules", d.stats.cnf_rules},
                    {"coded", d.params.coded},
                    {"eps", d.eps},
                    {"nConceptual", big(d.stats.n_conceptual)},
                    {"neutralsMaterialized", d.stats.neutrals_materialized},
                    {"nu", big(d.params.nu)},
                    {"omegaMaterialized", d.stats.omega_materialized},
                    {"sigmaBound", big(d.params.sigma_bound)},
                    {"sltVariant", d.slt_variant},
                    {"sltWidth", d.stats.slt_width},
                    {"tStates", d.stats.t_states},
                    {"tTransitions", d.stats.t_transitions},
                    {"tupleNts", d.stats.tuple_nts},
                    {"tupleRules", d.stats.tuple_rules}};
    return out.dump(2) + "\n";
}

CstDecomposition cst_from_json(const std::string& text) {
    json v;
    try {
        v = json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("decomposition is not valid JSON: ") + e.what());
    }
    try {
        if (v.at("schemaVersion").get<int>() != 1) bad("unsupported schemaVersion");
        CstDecomposition d;
        d.params.mode = v.at("mode").get<std::string>();
        const json& p = v.at("params");
        d.params.m = p.at("m").get<int>();
        d.params.j = bigint_from_string(p.at("j").get<std::string>());
        d.params.q = p.at("q").get<std::size_t>();
        for (const auto& s : v.at("sigma")) {
            std::string letter = s.get<std::string>();
            if (letter.size() != 1) bad("sigma letters must be single characters");
            d.sigma.push_back(letter[0]);
        }
        for (const auto& pair : v.at("rho")) {
            std::string name = pair.at(0).get<std::string>();
            std::string letter = pair.at(1).get<std::string>();
            if (letter.size() != 1) bad("rho images must be single letters");
            auto sym = parse_omega_n(name);
            if (!sym) bad("rho key is not a bracket symbol name: " + name);
            d.omega.push_back(*sym); // rho is sorted by name, so omega ends up sorted
            d.rho[name] = letter[0];
        }
        d.t = nfa_from_json(v.at("T").at("nfa"));
        if (v.at("T").contains("slt")) d.t_slt = slt_from_json(v.at("T").at("slt"));
        const json& st = v.at("stats");
        d.slt_variant = st.at("sltVariant").get<bool>();
        d.eps = st.at("eps").get<bool>();
        d.params.cap_hit = st.at("capHit").get<bool>();
        d.params.coded = st.at("coded").get<std::size_t>();
        d.params.sigma_bound = bigint_from_string(st.at("sigmaBound").get<std::string>());
        d.params.nu = bigint_from_string(st.at("nu").get<std::string>());
        d.stats.cnf_nts = st.at("cnfNts").get<std::size_t>();
        d.stats.cnf_rules = st.at("cnfRules").get<std::size_t>();
        d.stats.tuple_nts = st.at("tupleNts").get<std::size_t>();
        d.stats.tuple_rules = st.at("tupleRules").get<std::size_t>();
        d.stats.q = d.params.q;
        d.stats.coded = d.params.coded;
        d.stats.n_conceptual = bigint_from_string(st.at("nConceptual").get<std::string>());
        d.stats.omega_materialized = st.at("omegaMaterialized").get<std::size_t>();
        d.stats.neutrals_materialized = st.at("neutralsMaterialized").get<std::size_t>();
        d.stats.t_states = st.at("tStates").get<std::size_t>();
        d.stats.t_transitions = st.at("tTransitions").get<std::size_t>();
        d.stats.slt_width = st.at("sltWidth").get<int>();
        return d;
    } catch (const json::exception& e) {
        bad(std::string("decomposition JSON is missing fields: ") + e.what());
    }
}

std::string stanley_to_json(const StanleyDecomposition& d) {
    json out;
    out["schemaVersion"] = 1;
    out["mode"] = "stanley-" + d.mode;
    out["sigma"] = d.sigma;
    out["params"] = {{"m", d.stats.code_bits},
                     {"j", d.mode == "binary" ? "2" : "1"},
                     {"q", d.stats.rules},
                     {"n", std::to_string(d.stats.omega)},
                     {"l", "0"}};
    out["rho"] = json::array();
    for (const auto& [sym, image] : d.h) out["rho"].push_back(json::array({sym, image}));
    out["T"]["nfa"] = nfa_to_json(d.r);
    if (d.r_slt_ok) out["T"]["slt"] = slt_to_json(d.r_slt);
    auto pairs = d.pairs;
    std::sort(pairs.begin(), pairs.end());
    json jp = json::array();
    for (const auto& [o, c] : pairs) jp.push_back(json::array({o, c}));
    out["stats"] = {{"binaryRules", d.stats.binary_rules},
                    {"codeBits", d.stats.code_bits},
                    {"delimC", d.delim_c},
                    {"delimD", d.delim_d},
                    {"digit0", d.digit0},
                    {"digit1", d.digit1},
                    {"epsilon", d.epsilon},
                    {"omega", d.stats.omega},
                    {"pairs", jp},
                    {"rStates", d.stats.r_states},
                    {"rTransitions", d.stats.r_transitions},
                    {"rules", d.stats.rules},
                    {"width", d.width}};
    return out.dump(2) + "\n";
}

std::string linear_to_json(const LinearDecomposition& d) {
    json out;
    out["schemaVersion"] = 1;
    out["mode"] = "linear";
    out["sigma"] = d.sigma;
    out["params"] = {{"m", d.u_slt.k},
                     {"j", "0"}, // no digit codes in this decomposition
                     {"q", d.stats.lambda},
                     {"n", std::to_string(d.stats.n)},
                     {"l", std::to_string(d.stats.l)}};
    out["rho"] = json::array();
    for (const auto& [sym, letter] : d.g) out["rho"].push_back(json::array({sym, letter}));
    out["T"]["nfa"] = nfa_to_json(d.u);
    out["T"]["slt"] = slt_to_json(d.u_slt);
    json jf = json::array();
    for (const auto& l : d.fact.lambda) {
        const PairSymbol& p = d.fact.f.at(l);
        jf.push_back(json::array({l, p.first, p.second}));
    }
    out["stats"] = {{"closes", d.closes},
                    {"f", jf},
                    {"lambda", d.fact.lambda},
                    {"neutrals", d.neutrals},
                    {"opens", d.opens},
                    {"pathSlt", slt_to_json(d.fact.t)},
                    {"providerNote", d.provider_note},
                    {"uStates", d.stats.u_states},
                    {"uTransitions", d.stats.u_transitions},
                    {"wStates", d.stats.w_states}};
    return out.dump(2) + "\n";
}

std::string verification_to_json(const VerificationReport& r) {
    json out;
    out["maxlen"] = r.maxlen;
    out["lhsCount"] = r.lhs_count;
    out["rhsCount"] = r.rhs_count;
    out["equal"] = r.equal;
    out["witnesses"] = r.witnesses;
    out["runtimeMs"] = r.runtime_ms;
    return out.dump(2) + "\n";
}

std::vector<std::string> word_from_tuple_json(const std::string& text) {
    json v;
    try {
        v = json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("word is not valid JSON: ") + e.what());
    }
    if (!v.is_array()) bad("word must be an array of [polarity, x, y, digit] entries");
    std::vector<std::string> out;
    for (const auto& entry : v) {
        if (!entry.is_array() || entry.size() != 4)
            bad("each word symbol must be a [polarity, x, y, digit] array");
        std::string pol = entry.at(0).get<std::string>();
        std::string x = entry.at(1).get<std::string>();
        std::string y = entry.at(2).get<std::string>();
        if (x.size() != 1 || y.size() != 1) bad("symbol letters must be single characters");
        OmegaN s;
        if (pol == "[" || pol == "[[")
            s.kind = OmegaN::Kind::Open;
        else if (pol == "]" || pol == "]]")
            s.kind = OmegaN::Kind::Close;
        else if (pol == "-" || pol == "--")
            s.kind = OmegaN::Kind::Neutral;
        else
            bad("unknown polarity: " + pol);
        s.bold = pol.size() == 2;
        s.x = x[0];
        s.y = y[0];
        const auto& digit = entry.at(3);
        if (digit.is_number_unsigned() || digit.is_number_integer()) {
            long long dv = digit.get<long long>();
            if (dv < 0) bad("digits are nonnegative");
            s.digit = (BigInt)dv;
        } else if (digit.is_string()) {
            s.digit = bigint_from_string(digit.get<std::string>());
        } else {
            bad("digit must be a number or a decimal string");
        }
        out.push_back(s.name());
    }
    return out;
}

MetricsReport metrics_for(const Grammar& g, const CstDecomposition& d) {
    MetricsReport r;
    r.grammar_nts = g.nonterminals().size();
    r.grammar_rules = g.rules.size();
    r.cnf_nts = d.stats.cnf_nts;
    r.cnf_rules = d.stats.cnf_rules;
    r.tuple_nts = d.stats.tuple_nts;
    r.tuple_rules = d.stats.tuple_rules;
    r.q = d.params.q;
    r.m = d.params.m;
    r.j = d.params.j;
    r.n = d.stats.n_conceptual;
    r.l = d.params.j * (BigInt)d.sigma.size();
    r.slt_width = d.stats.slt_width;
    r.t_states = d.stats.t_states;
    r.t_transitions = d.stats.t_transitions;
    r.omega_materialized = d.stats.omega_materialized;
    r.tradeoff_product =
        (BigInt)r.omega_materialized * (BigInt)r.t_states * (BigInt)r.t_states;
    r.tradeoff_holds = r.tradeoff_product >= (BigInt)r.grammar_nts;
    r.caveat = "control-automaton states are the constructed upper bound, not a minimal "
               "automaton; the product overstates the attainable left-hand side";
    return r;
}

std::string metrics_to_json(const MetricsReport& r) {
    json out;
    out["grammar"] = {{"nts", r.grammar_nts}, {"rules", r.grammar_rules}};
    out["cnf"] = {{"nts", r.cnf_nts}, {"rules", r.cnf_rules}};
    out["tupleDgnf"] = {{"nts", r.tuple_nts}, {"rules", r.tuple_rules}};
    out["params"] = {{"m", r.m},
                     {"j", big(r.j)},
                     {"q", r.q},
                     {"n", big(r.n)},
                     {"l", big(r.l)}};
    out["sltWidth"] = r.slt_width;
    out["tNfa"] = {{"states", r.t_states}, {"transitions", r.t_transitions}};
    out["omegaMaterialized"] = r.omega_materialized;
    out["tradeoff"] = {{"product", big(r.tradeoff_product)},
                       {"grammarNts", r.grammar_nts},
                       {"holds", r.tradeoff_holds},
                       {"caveat", r.caveat}};
    return out.dump(2) + "\n";
}

} // namespace cst
