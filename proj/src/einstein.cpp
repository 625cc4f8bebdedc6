#include "flagein/einstein.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagein {

namespace {

Root root_sum(const Root& a, const Root& b) {
    std::vector<int> c(a.coeffs);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs[i];
    return Root(c);
}

std::string join_indices(const std::string& prefix, int i, int j) {
    return prefix + std::to_string(i) + std::to_string(j);
}

}  // namespace

std::string display_name(const std::string& troot_key) {
    // "2d<i>" -> h<i>, "d<i>-d<j>" -> g<i><j>, "d<i>+d<j>" -> f<i><j>
    if (troot_key.size() >= 3 && troot_key[0] == '2' && troot_key[1] == 'd')
        return "h" + troot_key.substr(2);
    if (!troot_key.empty() && troot_key[0] == 'd') {
        auto minus = troot_key.find('-');
        auto plus = troot_key.find('+');
        if (minus != std::string::npos)
            return join_indices("g", std::stoi(troot_key.substr(1, minus - 1)),
                                std::stoi(troot_key.substr(minus + 2)));
        if (plus != std::string::npos)
            return join_indices("f", std::stoi(troot_key.substr(1, plus - 1)),
                                std::stoi(troot_key.substr(plus + 2)));
    }
    return troot_key;
}

bool PolySystem::any_fixed() const {
    for (const auto& b : bindings)
        if (b.value) return true;
    return false;
}

PolySystem assemble(const Flag& flag) {
    PolySystem sys;
    const int s_count = flag.summand_count();
    const int nvars = s_count + 1;
    const int c_idx = s_count;
    const int n = flag.rank();
    sys.scale_factor = flag.family().family == Family::C ? Rational(8LL * (n + 1))
                                                         : Rational(4LL * (n - 1));
    sys.family = std::string(1, family_tag(flag.family().family));
    sys.partition = flag.partition();
    for (const IsotropySummand& sm : flag.summands()) {
        sys.vars.push_back(sm.key);
        sys.display.push_back(display_name(sm.key));
        sys.bindings.push_back(KeyBinding{sm.key, std::nullopt,
                                          static_cast<int>(sys.vars.size()) - 1});
    }
    sys.vars.push_back("c");
    sys.display.push_back("c");

    std::vector<StructuredEquation> structured;
    const RootFamily& fam = flag.family();
    for (int xi = 0; xi < s_count; ++xi) {
        const IsotropySummand& sm = flag.summands()[xi];
        const Root& alpha = sm.fiber.front();

        StructuredEquation eq;
        eq.xi = xi;
        eq.constant = killing_inner(fam, alpha, alpha);
        for (const Root& phi : flag.r_theta_of(alpha))
            eq.constant += structure_constant_sq(fam, alpha, phi);
        eq.constant *= sys.scale_factor;

        std::map<std::pair<int, int>, Rational> weights;
        for (const Root& beta : flag.r_m_of(alpha)) {
            int u = flag.summand_index(root_sum(alpha, beta));
            int v = flag.summand_index(beta);
            if (u > v) std::swap(u, v);
            weights[{u, v}] += sys.scale_factor * Rational(1, 4) *
                               structure_constant_sq(fam, alpha, beta);
        }
        for (const auto& [uv, w] : weights)
            eq.terms.push_back(InteractionTerm{uv.first, uv.second, w});

        // clearing monomial: lcm of the denominators l_u l_v
        Monomial clear(nvars, 0);
        for (const InteractionTerm& t : eq.terms) {
            if (t.u == t.v)
                clear[t.u] = std::max(clear[t.u], 2);
            else {
                clear[t.u] = std::max(clear[t.u], 1);
                clear[t.v] = std::max(clear[t.v], 1);
            }
        }

        Polynomial p(nvars);
        p.add_term(clear, eq.constant);
        for (const InteractionTerm& t : eq.terms) {
            Monomial base(clear);
            base[t.u] -= 1;
            base[t.v] -= 1;
            auto with = [&](int a, int b) {
                Monomial m(base);
                m[a] += 1;
                m[b] += 1;
                return m;
            };
            p.add_term(with(xi, xi), t.weight);
            p.add_term(with(t.u, t.u), -t.weight);
            p.add_term(with(t.u, t.v), t.weight * Rational(2));
            p.add_term(with(t.v, t.v), -t.weight);
        }
        {
            Monomial m(clear);
            m[xi] += 1;
            m[c_idx] += 1;
            p.add_term(m, -sys.scale_factor);
        }
        sys.equations.push_back(std::move(p));
        sys.eq_keys.push_back(sm.key);
        sys.clearing.push_back(clear);
        structured.push_back(std::move(eq));
    }
    sys.structured = std::move(structured);
    return sys;
}

PolySystem specialize(const PolySystem& sys, const Ansatz& ansatz) {
    const int old_n = static_cast<int>(sys.vars.size());
    const int old_c = sys.c_index();

    std::vector<int> class_of(old_n, -1);
    std::vector<Ansatz::Class> classes = ansatz.classes;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        if (classes[ci].value && !(*classes[ci].value > Rational(0)))
            throw std::invalid_argument("ansatz fixes class '" + classes[ci].name +
                                        "' to a non-positive value");
        for (const std::string& member : classes[ci].members) {
            auto it = std::find(sys.vars.begin(), sys.vars.end(), member);
            if (it == sys.vars.end())
                throw std::invalid_argument("ansatz references unknown variable '" + member + "'");
            int idx = static_cast<int>(it - sys.vars.begin());
            if (idx == old_c) throw std::invalid_argument("ansatz cannot constrain 'c'");
            if (class_of[idx] != -1)
                throw std::invalid_argument("variable '" + member + "' appears in two ansatz classes");
            class_of[idx] = static_cast<int>(ci);
        }
    }
    // unmentioned lambdas keep their own (unfixed) class
    for (int i = 0; i < old_c; ++i) {
        if (class_of[i] == -1) {
            classes.push_back(Ansatz::Class{sys.vars[i], {sys.vars[i]}, std::nullopt});
            class_of[i] = static_cast<int>(classes.size()) - 1;
        }
    }

    // new variable per unfixed class, in order of first appearance
    std::vector<int> class_var(classes.size(), -1);
    PolySystem out;
    out.scale_factor = sys.scale_factor;
    out.family = sys.family;
    out.partition = sys.partition;
    for (int i = 0; i < old_c; ++i) {
        int ci = class_of[i];
        if (classes[ci].value || class_var[ci] != -1) continue;
        class_var[ci] = static_cast<int>(out.vars.size());
        std::string name = classes[ci].name.empty() ? sys.vars[i] : classes[ci].name;
        out.vars.push_back(name);
        out.display.push_back(display_name(name));
    }
    const int new_c = static_cast<int>(out.vars.size());
    out.vars.push_back("c");
    out.display.push_back("c");
    const int new_n = new_c + 1;

    std::vector<int> var_map(old_n, -1);
    for (int i = 0; i < old_c; ++i)
        if (!classes[class_of[i]].value) var_map[i] = class_var[class_of[i]];
    var_map[old_c] = new_c;

    for (const KeyBinding& b : sys.bindings) {
        KeyBinding nb;
        nb.key = b.key;
        if (b.value) {
            nb.value = b.value;
            nb.var = -1;
        } else {
            int ci = class_of[b.var];
            if (classes[ci].value) {
                nb.value = classes[ci].value;
                nb.var = -1;
            } else {
                nb.var = class_var[ci];
            }
        }
        out.bindings.push_back(nb);
    }

    std::set<std::string> seen;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        Polynomial p = sys.equations[e];
        for (int i = 0; i < old_c; ++i)
            if (classes[class_of[i]].value) p = p.substitute(i, *classes[class_of[i]].value);
        p = p.remap(var_map, new_n).normalized();
        if (p.is_zero()) continue;
        if (p.total_degree() == 0) {
            std::string key = e < sys.eq_keys.size() ? sys.eq_keys[e] : std::to_string(e);
            throw std::invalid_argument("inconsistent ansatz: equation for " + key +
                                        " reduces to a nonzero constant");
        }
        std::ostringstream sig;
        sig << p.to_json();
        if (!seen.insert(sig.str()).second) continue;
        out.equations.push_back(std::move(p));
        out.eq_keys.push_back(e < sys.eq_keys.size() ? sys.eq_keys[e] : "");
        out.clearing.push_back(Monomial(new_n, 0));
    }
    return out;
}

namespace {

QuadValue eval_quad_impl(const Polynomial& p, const std::vector<QuadValue>& x) {
    QuadValue sum;
    for (const auto& [m, c] : p.terms()) {
        QuadValue t{Rational(1)};
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) t *= x[i];
        t *= QuadValue(c);
        sum += t;
    }
    return sum;
}

}  // namespace

QuadValue eval_quad(const Polynomial& p, const std::vector<QuadValue>& x) {
    return eval_quad_impl(p, x);
}

QuadraticSolveOutcome solve_quadratic_pair(const PolySystem& sys) {
    if (sys.equations.size() != 2)
        throw std::invalid_argument("quadratic pair solver needs exactly two equations, got " +
                                    std::to_string(sys.equations.size()));
    if (sys.vars.size() != 2)
        throw std::invalid_argument("quadratic pair solver needs exactly two variables");
    const int h_idx = 0;
    const int c_idx = 1;
    for (const Polynomial& p : sys.equations)
        if (p.degree_in(c_idx) > 1)
            throw std::invalid_argument("system is not linear in c");

    // eq_i = A_i(h) + B_i(h) * c
    Polynomial a1 = sys.equations[0].substitute(c_idx, Rational(0));
    Polynomial b1 = sys.equations[0].derivative(c_idx);
    Polynomial a2 = sys.equations[1].substitute(c_idx, Rational(0));
    Polynomial b2 = sys.equations[1].derivative(c_idx);

    Polynomial resultant = a1 * b2 - a2 * b1;
    QuadraticSolveOutcome out;
    if (resultant.is_zero())
        throw std::invalid_argument("equations are proportional; elimination degenerates");
    resultant = resultant.normalized();
    if (resultant.degree_in(c_idx) != 0)
        throw std::invalid_argument("internal: resultant still contains c");
    if (resultant.degree_in(h_idx) > 2)
        throw std::invalid_argument("elimination is not quadratic (degree " +
                                    std::to_string(resultant.degree_in(h_idx)) + ")");

    auto coeff_of = [&](int k) {
        Monomial m(2, 0);
        m[h_idx] = k;
        return resultant.coefficient(m);
    };
    out.qa = coeff_of(2);
    out.qb = coeff_of(1);
    out.qc = coeff_of(0);
    out.discriminant = out.qb * out.qb - Rational(4) * out.qa * out.qc;

    std::vector<std::pair<QuadValue, int>> h_roots;  // value, multiplicity
    if (out.qa.is_zero()) {
        if (out.qb.is_zero())
            throw std::invalid_argument("elimination degenerates to a constant");
        out.note = "linear elimination";
        h_roots.emplace_back(QuadValue(-out.qc / out.qb), 1);
    } else if (out.discriminant.sign() < 0) {
        out.has_real_roots = false;
        out.note = "no real Einstein metric in this ansatz (negative discriminant)";
        return out;
    } else if (out.discriminant.is_zero()) {
        out.note = "double root";
        h_roots.emplace_back(QuadValue(-out.qb / (Rational(2) * out.qa)), 2);
    } else {
        QuadValue sd = QuadValue::sqrt_of(out.discriminant);
        QuadValue two_a{Rational(2) * out.qa};
        QuadValue nb{-out.qb};
        h_roots.emplace_back((nb + sd) / two_a, 1);
        h_roots.emplace_back((nb - sd) / two_a, 1);
    }

    for (auto& [h, mult] : h_roots) {
        if (!(h.to_double() > 1e-12)) {
            ++out.discarded_nonpositive;
            continue;
        }
        // back-substitute c = -A_i(h)/B_i(h), choosing an equation whose
        // c-coefficient does not vanish at this root
        std::vector<QuadValue> point{h, QuadValue{}};
        QuadValue bv = eval_quad_impl(b1, point);
        QuadValue av = eval_quad_impl(a1, point);
        if (bv.is_zero()) {
            bv = eval_quad_impl(b2, point);
            av = eval_quad_impl(a2, point);
        }
        if (bv.is_zero()) throw std::invalid_argument("c-coefficient vanishes at a root");
        ClosedFormRoot root;
        root.h = h;
        root.c = -(av / bv);
        root.multiplicity = mult;
        out.roots.push_back(root);
    }
    out.has_real_roots = !out.roots.empty();
    if (out.note.empty()) out.note = out.roots.empty() ? "all roots non-positive" : "two real roots";
    return out;
}

std::string PolySystem::text() const {
    std::ostringstream os;
    if (structured) {
        for (const StructuredEquation& eq : *structured) {
            os << "[" << vars[eq.xi] << "]  " << eq.constant.str();
            for (const InteractionTerm& t : eq.terms) {
                const std::string& xu = display[t.u];
                const std::string& xv = display[t.v];
                const std::string& xx = display[eq.xi];
                os << " + " << t.weight.str() << "*(" << xx << "^2 - (" << xu << " - " << xv
                   << ")^2)/(" << xu << "*" << xv << ")";
            }
            os << " = " << scale_factor.str() << "*c*" << display[eq.xi] << "\n";
        }
    } else {
        for (std::size_t e = 0; e < equations.size(); ++e) {
            os << "[" << (e < eq_keys.size() && !eq_keys[e].empty() ? eq_keys[e] : std::to_string(e))
               << "]  " << equations[e].text(display) << " = 0\n";
        }
    }
    return os.str();
}

std::string PolySystem::latex() const {
    std::ostringstream os;
    os << "\\begin{align*}\n";
    if (structured) {
        for (const StructuredEquation& eq : *structured) {
            os << eq.constant.str();
            for (const InteractionTerm& t : eq.terms) {
                const std::string& xu = display[t.u];
                const std::string& xv = display[t.v];
                const std::string& xx = display[eq.xi];
                os << " + \\frac{" << t.weight.str() << "}{" << xu << " " << xv << "}\\left(" << xx
                   << "^2 - (" << xu << " - " << xv << ")^2\\right)";
            }
            os << " &= " << scale_factor.str() << "\\, c\\, " << display[eq.xi] << " \\\\\n";
        }
    } else {
        for (const Polynomial& p : equations) os << p.latex(display) << " &= 0 \\\\\n";
    }
    os << "\\end{align*}\n";
    return os.str();
}

nlohmann::json PolySystem::to_json() const {
    nlohmann::json j;
    j["family"] = family;
    j["partition"] = partition;
    j["scale_factor"] = scale_factor.str();
    j["vars"] = vars;
    j["display"] = display;
    nlohmann::json bnd = nlohmann::json::array();
    for (const KeyBinding& b : bindings) {
        nlohmann::json jb;
        jb["key"] = b.key;
        if (b.value)
            jb["value"] = b.value->str();
        else
            jb["var"] = b.var;
        bnd.push_back(jb);
    }
    j["bindings"] = bnd;
    nlohmann::json eqs = nlohmann::json::array();
    for (std::size_t e = 0; e < equations.size(); ++e) {
        nlohmann::json je;
        je["key"] = e < eq_keys.size() ? eq_keys[e] : "";
        je["clearing"] = clearing[e];
        je["monomials"] = equations[e].to_json();
        eqs.push_back(je);
    }
    j["equations"] = eqs;
    return j;
}

PolySystem PolySystem::from_json(const nlohmann::json& j) {
    PolySystem sys;
    sys.family = j.at("family").get<std::string>();
    sys.partition = j.at("partition").get<std::vector<int>>();
    sys.scale_factor = Rational::parse(j.at("scale_factor").get<std::string>());
    sys.vars = j.at("vars").get<std::vector<std::string>>();
    sys.display = j.at("display").get<std::vector<std::string>>();
    for (const auto& jb : j.at("bindings")) {
        KeyBinding b;
        b.key = jb.at("key").get<std::string>();
        if (jb.contains("value"))
            b.value = Rational::parse(jb.at("value").get<std::string>());
        else
            b.var = jb.at("var").get<int>();
        sys.bindings.push_back(b);
    }
    const int nvars = static_cast<int>(sys.vars.size());
    for (const auto& je : j.at("equations")) {
        sys.eq_keys.push_back(je.at("key").get<std::string>());
        sys.clearing.push_back(je.at("clearing").get<std::vector<int>>());
        sys.equations.push_back(Polynomial::from_json(je.at("monomials"), nvars));
    }
    return sys;
}

}  // namespace flagein
