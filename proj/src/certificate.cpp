#include "adegkit/certificate.hpp"

#include <sstream>

namespace adk {

namespace {

constexpr const char* kHeader = "adegkit-certificate v1";

void serialize_witness_rec(const Witness& w, std::ostringstream& out) {
    if (const auto* d = std::get_if<Witness::Dense>(&w.rep())) {
        size_t count = 0;
        for (const Q& v : d->values)
            if (v != 0) ++count;
        out << "dense " << w.arity() << " " << count << "\n";
        for (uint64_t m = 0; m < d->values.size(); ++m)
            if (d->values[m] != 0) out << "v " << m << " " << d->values[m].get_str() << "\n";
        return;
    }
    if (const auto* s = std::get_if<Witness::Symmetric>(&w.rep())) {
        size_t count = 0;
        for (const Q& v : s->level)
            if (v != 0) ++count;
        out << "symmetric " << w.arity() << " " << count << "\n";
        for (size_t t = 0; t < s->level.size(); ++t)
            if (s->level[t] != 0) out << "l " << t << " " << s->level[t].get_str() << "\n";
        return;
    }
    if (const auto* c = std::get_if<Witness::Composed>(&w.rep())) {
        out << "composed\n";
        serialize_witness_rec(*c->outer, out);
        serialize_witness_rec(*c->inner, out);
        return;
    }
    const auto& md = std::get<Witness::Modified>(w.rep());
    out << "modified " << md.eta << " " << md.f->spec_string() << "\n";
    serialize_witness_rec(*md.zeta, out);
    serialize_witness_rec(*md.xi, out);
}

Witness parse_witness_rec(const std::vector<std::string>& lines, size_t& i) {
    if (i >= lines.size()) throw std::runtime_error("certificate: truncated witness");
    std::istringstream hdr(lines[i++]);
    std::string tag;
    hdr >> tag;
    if (tag == "dense" || tag == "symmetric") {
        int n;
        size_t count;
        hdr >> n >> count;
        if (!hdr) throw std::runtime_error("certificate: bad witness header");
        if (tag == "dense") {
            if (n > Witness::kDenseBitsCap)
                throw std::runtime_error("certificate: dense witness too wide");
            std::vector<Q> vals(uint64_t(1) << n, Q(0));
            for (size_t j = 0; j < count; ++j) {
                std::istringstream ln(lines[i++]);
                std::string t, q;
                uint64_t mask;
                ln >> t >> mask >> q;
                if (t != "v" || mask >= vals.size())
                    throw std::runtime_error("certificate: bad dense entry");
                vals[mask] = parse_rational(q);
            }
            return Witness::dense(n, std::move(vals));
        }
        std::vector<Q> level(n + 1, Q(0));
        for (size_t j = 0; j < count; ++j) {
            std::istringstream ln(lines[i++]);
            std::string t, q;
            size_t lev;
            ln >> t >> lev >> q;
            if (t != "l" || lev >= level.size())
                throw std::runtime_error("certificate: bad level entry");
            level[lev] = parse_rational(q);
        }
        return Witness::symmetric(n, std::move(level));
    }
    if (tag == "composed") {
        Witness outer = parse_witness_rec(lines, i);
        Witness inner = parse_witness_rec(lines, i);
        return dbc(outer, inner);
    }
    if (tag == "modified") {
        int eta;
        hdr >> eta;
        std::string spec;
        std::getline(hdr, spec);
        if (!spec.empty() && spec[0] == ' ') spec.erase(0, 1);
        BoolFn f = parse_funcspec(spec);
        Witness zeta = parse_witness_rec(lines, i);
        Witness xi = parse_witness_rec(lines, i);
        return modified_compose(zeta, xi, f, eta);
    }
    throw std::runtime_error("certificate: unknown witness tag " + tag);
}

Verdict parse_verdict(const std::string& s) {
    if (s == "CERTIFIED") return Verdict::Certified;
    if (s == "REGIME-ONLY") return Verdict::RegimeOnly;
    if (s == "FAILED") return Verdict::Failed;
    throw std::runtime_error("certificate: unknown verdict " + s);
}

std::string param_value(const Certificate& c, const std::string& key) {
    for (const auto& p : c.params)
        if (p[0] == key) return p[1];
    throw std::runtime_error("certificate: missing parameter " + key);
}

std::vector<ClaimResult> recompute_approximant(const Certificate& c) {
    int k = std::stoi(param_value(c, "k"));
    int N = std::stoi(param_value(c, "blocksize"));
    int R = std::stoi(param_value(c, "blocks"));
    int m = std::stoi(param_value(c, "outer-degree"));
    int d = std::stoi(param_value(c, "inner-degree"));
    Q bound = parse_rational(param_value(c, "error-bound"));
    ApproximantReport rep = build_approximant(k, N, R, m, d);
    std::vector<ClaimResult> out;
    if (!rep.measured) {
        out.push_back({"measured error", Verdict::RegimeOnly, "unmeasured",
                       "<=" + to_string(bound)});
        return out;
    }
    out.push_back({"measured error",
                   rep.measured_error <= bound ? Verdict::Certified : Verdict::Failed,
                   to_string(rep.measured_error), "<=" + to_string(bound)});
    out.push_back({"error chain",
                   rep.measured_error <= rep.chain_bound ? Verdict::Certified
                                                         : Verdict::Failed,
                   to_string(rep.measured_error), "<=" + to_string(rep.chain_bound)});
    return out;
}

}  // namespace

std::string serialize_witness(const Witness& w) {
    std::ostringstream out;
    serialize_witness_rec(w, out);
    return out.str();
}

std::string serialize(const Certificate& c) {
    std::ostringstream out;
    out << kHeader << "\n";
    out << "kind " << c.kind << "\n";
    if (!c.funcspec.empty()) out << "func " << c.funcspec << "\n";
    for (const auto& p : c.params)
        out << "param " << p[0] << " " << p[1] << " " << p[2] << "\n";
    if (c.witness) {
        out << "witness begin\n";
        serialize_witness_rec(*c.witness, out);
        out << "witness end\n";
    }
    if (c.claims.normalized) out << "require normalized\n";
    if (c.claims.phd_bound >= 0) out << "require phd " << c.claims.phd_bound << "\n";
    if (c.claims.correlation_above)
        out << "require corr-above " << c.claims.correlation_above->get_str() << "\n";
    if (c.claims.zero_mass_above >= 0)
        out << "require zero-above " << c.claims.zero_mass_above << "\n";
    for (const auto& r : c.results)
        out << "result " << verdict_name(r.verdict) << " " << r.measured << " "
            << r.bound << " " << r.name << "\n";
    out << "end\n";
    return out.str();
}

Certificate parse_certificate(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
    }
    if (lines.empty() || lines[0] != kHeader)
        throw std::runtime_error("certificate: missing header");
    Certificate c;
    size_t i = 1;
    while (i < lines.size()) {
        std::istringstream ln(lines[i]);
        std::string tag;
        ln >> tag;
        if (tag == "end") return c;
        ++i;
        if (tag.empty()) continue;
        if (tag == "kind") {
            ln >> c.kind;
        } else if (tag == "func") {
            std::string rest;
            std::getline(ln, rest);
            if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
            c.funcspec = rest;
        } else if (tag == "param") {
            std::array<std::string, 3> p;
            ln >> p[0] >> p[1] >> p[2];
            c.params.push_back(p);
        } else if (tag == "witness") {
            std::string state;
            ln >> state;
            if (state != "begin") throw std::runtime_error("certificate: bad witness block");
            c.witness = parse_witness_rec(lines, i);
            if (i >= lines.size() || lines[i] != "witness end")
                throw std::runtime_error("certificate: unterminated witness block");
            ++i;
        } else if (tag == "require") {
            std::string what;
            ln >> what;
            if (what == "normalized") {
                c.claims.normalized = true;
            } else if (what == "phd") {
                ln >> c.claims.phd_bound;
            } else if (what == "corr-above") {
                std::string q;
                ln >> q;
                c.claims.correlation_above = parse_rational(q);
            } else if (what == "zero-above") {
                ln >> c.claims.zero_mass_above;
            } else {
                throw std::runtime_error("certificate: unknown requirement " + what);
            }
        } else if (tag == "result") {
            std::string verdict, measured, bound, name;
            ln >> verdict >> measured >> bound;
            std::getline(ln, name);
            if (!name.empty() && name[0] == ' ') name.erase(0, 1);
            c.results.push_back({name, parse_verdict(verdict), measured, bound});
        } else {
            throw std::runtime_error("certificate: unknown line tag " + tag);
        }
    }
    throw std::runtime_error("certificate: missing end marker");
}

std::vector<ClaimResult> recompute(const Certificate& c) {
    if (c.kind == "approximant") return recompute_approximant(c);
    if (c.kind != "witness") throw std::runtime_error("certificate: unknown kind " + c.kind);
    if (!c.witness) throw std::runtime_error("certificate: witness payload missing");
    BoolFn f = parse_funcspec(c.funcspec);
    return verify_witness(*c.witness, f, c.claims).claims;
}

bool verdicts_match(const std::vector<ClaimResult>& a, const std::vector<ClaimResult>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].name != b[i].name || a[i].verdict != b[i].verdict ||
            a[i].measured != b[i].measured || a[i].bound != b[i].bound)
            return false;
    return true;
}

Certificate certify_witness(const std::string& funcspec, const Witness& w,
                            const WitnessClaims& claims) {
    Certificate c;
    c.kind = "witness";
    c.funcspec = funcspec;
    c.witness = w;
    c.claims = claims;
    c.results = recompute(c);
    return c;
}

Certificate certify_approximant(const ApproximantReport& rep, const Q& error_bound) {
    Certificate c;
    c.kind = "approximant";
    c.funcspec = "OR:" + std::to_string(rep.R) + " o THR:" + std::to_string(rep.k) +
                 ":" + std::to_string(rep.N) + " <=" + std::to_string(rep.N);
    c.params.push_back({"k", std::to_string(rep.k), "CONFIG"});
    c.params.push_back({"blocksize", std::to_string(rep.N), "CONFIG"});
    c.params.push_back({"blocks", std::to_string(rep.R), "CONFIG"});
    c.params.push_back({"outer-degree", std::to_string(rep.m), "CONFIG"});
    c.params.push_back({"inner-degree", std::to_string(rep.d), "CONFIG"});
    c.params.push_back({"error-bound", to_string(error_bound), "CONFIG"});
    c.params.push_back({"total-degree", std::to_string(rep.total_degree), "MEASURED"});
    c.results = recompute(c);
    return c;
}

}  // namespace adk
