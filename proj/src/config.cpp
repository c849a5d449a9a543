#include "arcmelt/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace arcmelt::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& raw, const std::string& where) {
    const std::string t = trim(raw);
    if (t == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + t + "'");
    }
}

std::vector<double> parse_number_list(const std::string& raw, const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, where));
    if (out.empty()) throw ConfigError(where + ": empty list");
    return out;
}

struct Entry {
    std::string value;
    int line;
    bool used = false;
};

struct Section {
    // repeated keys only legal for "point"
    std::multimap<std::string, Entry> entries;
    int line = 0;
    bool used = false;
};

struct ParsedFile {
    std::map<std::string, Section> sections;

    Section* find(const std::string& name) {
        auto it = sections.find(name);
        if (it == sections.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }
};

ParsedFile tokenize(const std::string& text) {
    ParsedFile pf;
    std::string current;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            pf.sections[current].line = lineno;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (current.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        pf.sections[current].entries.emplace(key, Entry{value, lineno});
    }
    return pf;
}

class SectionReader {
public:
    SectionReader(ParsedFile& pf, std::string name) : name_(std::move(name)) {
        sec_ = pf.find(name_);
    }
    bool exists() const { return sec_ != nullptr; }

    std::optional<double> number(const std::string& key) {
        if (!sec_) return std::nullopt;
        auto it = sec_->entries.find(key);
        if (it == sec_->entries.end()) return std::nullopt;
        if (sec_->entries.count(key) > 1)
            throw ConfigError("[" + name_ + "] " + key + ": duplicate key");
        it->second.used = true;
        return parse_number(it->second.value, "[" + name_ + "] " + key);
    }
    double required(const std::string& key) {
        auto v = number(key);
        if (!v) throw ConfigError("[" + name_ + "] " + key + ": missing required field");
        return *v;
    }
    std::optional<std::string> text(const std::string& key) {
        if (!sec_) return std::nullopt;
        auto it = sec_->entries.find(key);
        if (it == sec_->entries.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }
    std::vector<std::string> repeated(const std::string& key) {
        std::vector<std::string> out;
        if (!sec_) return out;
        auto [lo, hi] = sec_->entries.equal_range(key);
        for (auto it = lo; it != hi; ++it) {
            it->second.used = true;
            out.push_back(it->second.value);
        }
        return out;
    }
    void check_all_used() const {
        if (!sec_) return;
        for (const auto& [k, e] : sec_->entries)
            if (!e.used)
                throw ConfigError("[" + name_ + "] " + k + " (line " + std::to_string(e.line) +
                                  "): unknown key");
    }

private:
    std::string name_;
    Section* sec_ = nullptr;
};

coeffs::CoefficientFamily parse_family(ParsedFile& pf, const std::string& section,
                                       std::optional<double> default_constant) {
    SectionReader r(pf, section);
    if (!r.exists()) {
        if (default_constant)
            return coeffs::CoefficientFamily::constant(*default_constant);
        throw ConfigError("[" + section + "]: missing required coefficient section");
    }
    const auto kind = r.text("kind");
    const auto where = "[" + section + "]";
    const auto points_raw = r.repeated("point");
    if (!points_raw.empty()) {
        if (kind && *kind != "tabulated")
            throw ConfigError(where + ": point lines require kind = tabulated");
        std::vector<std::pair<double, double>> pts;
        for (const auto& pr : points_raw) {
            const auto nums = parse_number_list(pr, where + " point");
            if (nums.size() != 2)
                throw ConfigError(where + " point: expected 'theta, value'");
            pts.emplace_back(nums[0], nums[1]);
        }
        r.check_all_used();
        return coeffs::CoefficientFamily::tabulated(std::move(pts));
    }
    if (!kind) throw ConfigError(where + ": missing kind");
    const auto params_raw = r.text("params");
    if (!params_raw) throw ConfigError(where + ": missing params");
    const auto params = parse_number_list(*params_raw, where + " params");
    r.check_all_used();
    auto need = [&](std::size_t n, const char* shape) {
        if (params.size() != n)
            throw ConfigError(where + " params: " + shape);
    };
    if (*kind == "constant") {
        need(1, "constant takes one value");
        return coeffs::CoefficientFamily::constant(params[0]);
    }
    if (*kind == "affine") {
        need(2, "affine takes 'intercept, slope'");
        return coeffs::CoefficientFamily::affine(params[0], params[1]);
    }
    if (*kind == "exponential") {
        need(2, "exponential takes 'scale, rate'");
        return coeffs::CoefficientFamily::exponential(params[0], params[1]);
    }
    if (*kind == "tabulated")
        throw ConfigError(where + ": tabulated families use point = theta, value lines");
    throw ConfigError(where + ": unknown kind '" + *kind + "'");
}

} // namespace

bool BoundsOverrides::any() const {
    return L_m || L_M || N_m || N_M || K_m || K_M || Ntilde1 || Ntilde2 || Ltilde1 ||
           Ltilde2 || Ktilde1 || Ktilde2;
}

void BoundsOverrides::apply(coeffs::CoefficientBounds& b) const {
    if (L_m) b.L_m = *L_m;
    if (L_M) b.L_M = *L_M;
    if (N_m) b.N_m = *N_m;
    if (N_M) b.N_M = *N_M;
    if (K_m) b.K_m = *K_m;
    if (K_M) b.K_M = *K_M;
    if (Ntilde1) b.Ntilde1 = *Ntilde1;
    if (Ntilde2) b.Ntilde2 = *Ntilde2;
    if (Ltilde1) b.Ltilde1 = *Ltilde1;
    if (Ltilde2) b.Ltilde2 = *Ltilde2;
    if (Ktilde1) b.Ktilde1 = *Ktilde1;
    if (Ktilde2) b.Ktilde2 = *Ktilde2;
}

void RunConfig::validate() const {
    params.validate();
    if (!(bounds_est.u_max > bounds_est.u_min))
        throw ConfigError("[bounds] u_min/u_max: degenerate range");
    const double th_lo = coefficients.theta_m * (bounds_est.u_min + 1.0);
    const double th_hi = coefficients.theta_m * (bounds_est.u_max + 1.0);
    auto check_pos = [&](const coeffs::CoefficientFamily& f, const std::string& name) {
        if (!f.positive_on(th_lo, th_hi))
            throw ConfigError("[coefficients." + name +
                              "]: must be positive and finite on theta in [" +
                              std::to_string(th_lo) + ", " + std::to_string(th_hi) + "]");
    };
    check_pos(coefficients.c1, "phase1.c");
    check_pos(coefficients.gamma1, "phase1.gamma");
    check_pos(coefficients.lambda1, "phase1.lambda");
    check_pos(coefficients.c2, "phase2.c");
    check_pos(coefficients.gamma2, "phase2.gamma");
    check_pos(coefficients.lambda2, "phase2.lambda");
    // sources may vanish but not go negative
    for (const auto* rho : {&coefficients.rho1, &coefficients.rho2}) {
        for (int i = 0; i <= 64; ++i) {
            const double th = th_lo + (th_hi - th_lo) * i / 64.0;
            if ((*rho)(th) < 0.0)
                throw ConfigError("[coefficients.*.rho]: source density must be >= 0");
        }
    }
    solver.picard.validate();
    if (!(solver.quad.rel_tol > 0) || !(solver.quad.abs_tol > 0) || solver.quad.max_depth < 1)
        throw ConfigError("[solver] quadrature tolerances must be positive");
    if (!(solver.root_tol > 0)) throw ConfigError("[solver] root_tol must be positive");
    if (solver.scan_points < 2) throw ConfigError("[solver] scan_points must be >= 2");
    if (!(solver.snapshot_time > 0)) throw ConfigError("[solver] snapshot_time must be positive");
    if (!(solver.eta_decay > 0) || !(solver.eta_decay < 1))
        throw ConfigError("[solver] eta_decay must lie in (0, 1)");
    if (solver.residual_refine < 1) throw ConfigError("[solver] residual_refine must be >= 1");
}

coeffs::CoefficientBounds RunConfig::resolve_bounds() const {
    auto b = coeffs::estimate_bounds(coefficients, bounds_est, params.a);
    bounds_overrides.apply(b);
    b.validate(params.a);
    return b;
}

RunConfig parse_config_text(const std::string& text) {
    ParsedFile pf = tokenize(text);

    SectionReader phys(pf, "physical");
    if (!phys.exists()) throw ConfigError("[physical]: missing required section");
    vapor::PhysicalParams p;
    p.P = phys.required("P");
    p.a = phys.required("a");
    p.lambda_b = phys.required("lambda_b");
    p.L_b = phys.required("L_b");
    p.gamma_b = phys.required("gamma_b");
    p.theta_ion = phys.required("theta_ion");
    p.theta_b = phys.required("theta_b");
    p.theta_m = phys.required("theta_m");
    p.l_m = phys.required("l_m");
    p.gamma_m = phys.required("gamma_m");
    const auto k_direct = phys.number("k");
    const auto I0 = phys.number("I0");
    const auto omega = phys.number("omega");
    const auto t_a = phys.number("t_a");
    if (k_direct && (I0 || omega || t_a))
        throw ConfigError("[physical]: give either k or the I0/omega/t_a triple, not both");
    if (I0 || omega || t_a) {
        if (!(I0 && omega && t_a))
            throw ConfigError("[physical]: I0, omega, t_a must be given together");
        p.k = vapor::PhysicalParams::ramp_coefficient(*I0, *omega, *t_a);
    } else {
        p.k = k_direct.value_or(0.0);
    }
    phys.check_all_used();

    coeffs::CoefficientSet set{
        parse_family(pf, "coefficients.phase1.c", std::nullopt),
        parse_family(pf, "coefficients.phase1.gamma", std::nullopt),
        parse_family(pf, "coefficients.phase1.lambda", std::nullopt),
        parse_family(pf, "coefficients.phase1.rho", 0.0),
        parse_family(pf, "coefficients.phase2.c", std::nullopt),
        parse_family(pf, "coefficients.phase2.gamma", std::nullopt),
        parse_family(pf, "coefficients.phase2.lambda", std::nullopt),
        parse_family(pf, "coefficients.phase2.rho", 0.0),
        p.theta_m};

    RunConfig cfg{p, std::move(set), {}, {}, {}};

    SectionReader bnd(pf, "bounds");
    if (bnd.exists()) {
        if (auto v = bnd.number("u_min")) cfg.bounds_est.u_min = *v;
        if (auto v = bnd.number("u_max")) cfg.bounds_est.u_max = *v;
        if (auto v = bnd.number("samples")) cfg.bounds_est.samples = static_cast<int>(*v);
        if (auto v = bnd.number("safety_factor")) cfg.bounds_est.safety_factor = *v;
        if (auto v = bnd.number("R")) cfg.bounds_est.R_override = *v;
        auto& o = cfg.bounds_overrides;
        o.L_m = bnd.number("L_m");
        o.L_M = bnd.number("L_M");
        o.N_m = bnd.number("N_m");
        o.N_M = bnd.number("N_M");
        o.K_m = bnd.number("K_m");
        o.K_M = bnd.number("K_M");
        o.Ntilde1 = bnd.number("Ntilde1");
        o.Ntilde2 = bnd.number("Ntilde2");
        o.Ltilde1 = bnd.number("Ltilde1");
        o.Ltilde2 = bnd.number("Ltilde2");
        o.Ktilde1 = bnd.number("Ktilde1");
        o.Ktilde2 = bnd.number("Ktilde2");
        bnd.check_all_used();
    }

    SectionReader sol(pf, "solver");
    if (sol.exists()) {
        auto& s = cfg.solver;
        if (auto v = sol.number("picard_tol")) s.picard.tol = *v;
        if (auto v = sol.number("picard_max_iter")) s.picard.max_iter = static_cast<int>(*v);
        if (auto v = sol.number("grid_size")) s.picard.grid_size = static_cast<int>(*v);
        if (auto v = sol.number("quad_rel_tol")) s.quad.rel_tol = *v;
        if (auto v = sol.number("quad_abs_tol")) s.quad.abs_tol = *v;
        if (auto v = sol.number("quad_max_depth")) s.quad.max_depth = static_cast<int>(*v);
        if (auto v = sol.number("root_tol")) s.root_tol = *v;
        if (auto v = sol.number("scan_points")) s.scan_points = static_cast<int>(*v);
        if (auto v = sol.number("snapshot_time")) s.snapshot_time = *v;
        if (auto v = sol.number("eta_decay")) s.eta_decay = *v;
        if (auto v = sol.number("residual_refine")) s.residual_refine = static_cast<int>(*v);
        sol.check_all_used();
    }

    for (const auto& [name, sec] : pf.sections)
        if (!sec.used)
            throw ConfigError("[" + name + "] (line " + std::to_string(sec.line) +
                              "): unknown section");

    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

void emit_family(std::ostream& os, const std::string& section,
                 const coeffs::CoefficientFamily& f) {
    os << "[coefficients." << section << "]\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    switch (f.kind()) {
        case coeffs::FamilyKind::constant:
            os << "kind = constant\nparams = " << num(f.parameters()[0]) << "\n";
            break;
        case coeffs::FamilyKind::affine:
            os << "kind = affine\nparams = " << num(f.parameters()[0]) << ", "
               << num(f.parameters()[1]) << "\n";
            break;
        case coeffs::FamilyKind::exponential:
            os << "kind = exponential\nparams = " << num(f.parameters()[0]) << ", "
               << num(f.parameters()[1]) << "\n";
            break;
        case coeffs::FamilyKind::tabulated:
            os << "kind = tabulated\n";
            for (const auto& [t, v] : f.points())
                os << "point = " << num(t) << ", " << num(v) << "\n";
            break;
    }
    os << "\n";
}

} // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    const auto& p = cfg.params;
    os << "[physical]\n";
    os << "P = " << num(p.P) << "\na = " << num(p.a) << "\nlambda_b = " << num(p.lambda_b)
       << "\nL_b = " << num(p.L_b) << "\ngamma_b = " << num(p.gamma_b)
       << "\ntheta_ion = " << num(p.theta_ion) << "\ntheta_b = " << num(p.theta_b)
       << "\ntheta_m = " << num(p.theta_m) << "\nl_m = " << num(p.l_m)
       << "\ngamma_m = " << num(p.gamma_m) << "\nk = " << num(p.k) << "\n\n";
    emit_family(os, "phase1.c", cfg.coefficients.c1);
    emit_family(os, "phase1.gamma", cfg.coefficients.gamma1);
    emit_family(os, "phase1.lambda", cfg.coefficients.lambda1);
    emit_family(os, "phase1.rho", cfg.coefficients.rho1);
    emit_family(os, "phase2.c", cfg.coefficients.c2);
    emit_family(os, "phase2.gamma", cfg.coefficients.gamma2);
    emit_family(os, "phase2.lambda", cfg.coefficients.lambda2);
    emit_family(os, "phase2.rho", cfg.coefficients.rho2);
    os << "[bounds]\n";
    os << "u_min = " << num(cfg.bounds_est.u_min) << "\nu_max = " << num(cfg.bounds_est.u_max)
       << "\nsamples = " << cfg.bounds_est.samples
       << "\nsafety_factor = " << num(cfg.bounds_est.safety_factor) << "\n";
    if (cfg.bounds_est.R_override) os << "R = " << num(*cfg.bounds_est.R_override) << "\n";
    const auto& o = cfg.bounds_overrides;
    auto emit_opt = [&](const char* key, const std::optional<double>& v) {
        if (v) os << key << " = " << num(*v) << "\n";
    };
    emit_opt("L_m", o.L_m);
    emit_opt("L_M", o.L_M);
    emit_opt("N_m", o.N_m);
    emit_opt("N_M", o.N_M);
    emit_opt("K_m", o.K_m);
    emit_opt("K_M", o.K_M);
    emit_opt("Ntilde1", o.Ntilde1);
    emit_opt("Ntilde2", o.Ntilde2);
    emit_opt("Ltilde1", o.Ltilde1);
    emit_opt("Ltilde2", o.Ltilde2);
    emit_opt("Ktilde1", o.Ktilde1);
    emit_opt("Ktilde2", o.Ktilde2);
    os << "\n[solver]\n";
    const auto& s = cfg.solver;
    os << "picard_tol = " << num(s.picard.tol) << "\npicard_max_iter = " << s.picard.max_iter
       << "\ngrid_size = " << s.picard.grid_size << "\nquad_rel_tol = " << num(s.quad.rel_tol)
       << "\nquad_abs_tol = " << num(s.quad.abs_tol)
       << "\nquad_max_depth = " << s.quad.max_depth << "\nroot_tol = " << num(s.root_tol)
       << "\nscan_points = " << s.scan_points
       << "\nsnapshot_time = " << num(s.snapshot_time)
       << "\neta_decay = " << num(s.eta_decay)
       << "\nresidual_refine = " << s.residual_refine << "\n";
    return os.str();
}

} // namespace arcmelt::config
