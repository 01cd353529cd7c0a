#pragma once

#include <fstream>
#include <random>
#include <sstream>

#include "selmer_slopes.hpp"

namespace padicreg {

// ---- p-adic value strings ----
//
//   "0"                       exact zero
//   "int:-12"                 exact integer (enables the exact oracle path)
//   "rat:3/7"                 exact rational, denominator prime to p
//   "p5:2,0,1"                2 + 0*5 + 1*25 + O(5^3); digit count = precision
//   "p5^-2:1,3"               5^-2 * (1 + 3*5) + O(5^0)
//   "O(5^8)"                  inexact zero, all digits vanish

struct ParsedValue {
    PadicNumber value;
    std::optional<Rational> exact;
};

inline std::string format_padic(const PadicNumber& x) {
    if (x.is_exact_zero()) return "0";
    if (x.is_inexact_zero())
        return "O(" + std::to_string(x.prime()) + "^" + std::to_string(x.valuation_bound()) + ")";
    std::ostringstream os;
    os << "p" << x.prime();
    if (x.valuation() != 0) os << "^" << x.valuation();
    os << ":";
    Int u = x.unit_digits();
    for (long i = 0; i < x.rel_precision(); ++i) {
        if (i) os << ",";
        os << u % x.prime();
        u /= x.prime();
    }
    return os.str();
}

inline ParsedValue parse_value(const std::string& s, unsigned long p, long precision, int line) {
    auto fail = [&](const std::string& msg) -> ParsedValue { throw ParseError(line, msg); };
    if (s == "0") return {PadicNumber::exact_zero(p), Rational(0)};
    if (s.rfind("int:", 0) == 0) {
        Int n(s.substr(4));
        return {PadicNumber::from_int(p, n, precision), Rational(n)};
    }
    if (s.rfind("rat:", 0) == 0) {
        auto slash = s.find('/', 4);
        if (slash == std::string::npos) return fail("rat: value needs a/b");
        Int a(s.substr(4, slash - 4)), b(s.substr(slash + 1));
        if (b == 0) return fail("zero denominator");
        Rational r(a, b);
        if (a != 0 && valuation_int(b, Int(p)) != 0) return fail("denominator divisible by p");
        return {PadicNumber::from_rational(p, r, precision), r};
    }
    if (s.rfind("O(", 0) == 0) {
        auto caret = s.find('^');
        auto close = s.find(')');
        if (caret == std::string::npos || close == std::string::npos) return fail("malformed O(p^k)");
        unsigned long pp = std::stoul(s.substr(2, caret - 2));
        if (pp != p) return fail("prime mismatch in O(p^k)");
        long k = std::stol(s.substr(caret + 1, close - caret - 1));
        return {PadicNumber::inexact_zero(p, k), std::nullopt};
    }
    if (s.size() > 1 && s[0] == 'p') {
        auto colon = s.find(':');
        if (colon == std::string::npos) return fail("malformed p-adic digit string");
        std::string head = s.substr(1, colon - 1);
        long v = 0;
        auto caret = head.find('^');
        unsigned long pp;
        if (caret == std::string::npos)
            pp = std::stoul(head);
        else {
            pp = std::stoul(head.substr(0, caret));
            v = std::stol(head.substr(caret + 1));
        }
        if (pp != p) return fail("prime mismatch in digit string");
        std::vector<long> digits;
        std::string rest = s.substr(colon + 1);
        std::istringstream ds(rest);
        std::string tok;
        while (std::getline(ds, tok, ',')) {
            if (tok.empty()) return fail("empty digit");
            long dg = std::stol(tok);
            if (dg < 0 || dg >= static_cast<long>(p)) return fail("digit out of range");
            digits.push_back(dg);
        }
        if (digits.empty()) return fail("no digits");
        Int val = 0, pw = 1;
        for (long dg : digits) {
            val += dg * pw;
            pw *= p;
        }
        long k = static_cast<long>(digits.size());
        if (val == 0) return {PadicNumber::inexact_zero(p, v + k), std::nullopt};
        long w = valuation_int(val, Int(p));
        PadicNumber out = PadicNumber::from_unit(p, v + w, val / pow_int(Int(p), static_cast<unsigned long>(w)),
                                                 k - w);
        return {out, std::nullopt};
    }
    return fail("unrecognized value '" + s + "'");
}

// ---- a small INI dialect: [section], [[section]], key = value ----

struct IniSection {
    std::string name;
    bool is_array = false;
    std::vector<std::tuple<std::string, std::string, int>> entries; // key, value, line
    int line = 0;

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v, ln] : entries)
            if (k == key) return &v;
        return nullptr;
    }
    std::string require(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw ParseError(line, "section [" + name + "] is missing key '" + key + "'");
        return *v;
    }
};

inline std::vector<IniSection> parse_ini(std::istream& in) {
    std::vector<IniSection> sections;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        auto strip = [](std::string t) {
            std::size_t a = t.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            std::size_t b = t.find_last_not_of(" \t\r");
            return t.substr(a, b - a + 1);
        };
        s = strip(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            bool arr = s.rfind("[[", 0) == 0;
            std::size_t close = s.find(arr ? "]]" : "]");
            if (close == std::string::npos) throw ParseError(line, "unterminated section header");
            std::string name = strip(s.substr(arr ? 2 : 1, close - (arr ? 2 : 1)));
            if (name.empty()) throw ParseError(line, "empty section name");
            sections.push_back({name, arr, {}, line});
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected key = value");
        std::string key = strip(s.substr(0, eq));
        std::string val = strip(s.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        if (key.empty()) throw ParseError(line, "empty key");
        if (sections.empty()) throw ParseError(line, "key outside of any section");
        sections.back().entries.emplace_back(key, val, line);
    }
    return sections;
}

// ---- instance files ----

inline RepClass parse_rep_class(const std::string& s, int line) {
    if (s == "exotic") return RepClass::Exotic;
    if (s == "rm") return RepClass::RM;
    if (s == "cm") return RepClass::CM;
    if (s == "klein") return RepClass::Klein;
    throw ParseError(line, "unknown rep_class '" + s + "'");
}

inline RegulatorInstance parse_instance(std::istream& in) {
    auto sections = parse_ini(in);
    const IniSection* head = nullptr;
    for (const auto& s : sections)
        if (s.name == "instance") head = &s;
    if (!head) throw ParseError(1, "missing [instance] section");
    RegulatorInstance inst;
    if (head->require("format") != "1") throw ParseError(head->line, "unsupported format version");
    inst.p = std::stoul(head->require("prime"));
    inst.precision = std::stol(head->require("precision"));
    inst.nu = head->find("nu") ? std::stoi(*head->find("nu")) : (inst.p == 2 ? 2 : 1);
    inst.rep_class = parse_rep_class(head->require("rep_class"), head->line);
    if (inst.p < 3) throw ParseError(head->line, "p = 2 is not supported numerically");

    bool all_exact = true;
    std::array<Rational, 3> Lx{};
    std::array<std::array<Rational, 3>, 3> Mx{};
    auto read_entry = [&](const IniSection& sec, const std::string& key, std::optional<Rational>& ex) {
        ParsedValue pv = parse_value(sec.require(key), inst.p, inst.precision, sec.line);
        ex = pv.exact;
        if (!pv.exact) all_exact = false;
        return pv.value;
    };

    bool got_L = false, got_M = false;
    for (const auto& sec : sections) {
        if (sec.name == "L") {
            std::optional<Rational> ex;
            for (int j = 0; j < 3; ++j) {
                inst.L[static_cast<std::size_t>(j)] = read_entry(sec, "L" + std::to_string(j + 1), ex);
                if (ex) Lx[static_cast<std::size_t>(j)] = *ex;
            }
            got_L = true;
        } else if (sec.name == "M") {
            std::optional<Rational> ex;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        read_entry(sec, "M" + std::to_string(i + 1) + std::to_string(j + 1), ex);
                    if (ex) Mx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *ex;
                }
            got_M = true;
        } else if (sec.name == "M_ell") {
            MEllRow row;
            row.ell = std::stol(sec.require("ell"));
            std::string kind = sec.require("kind");
            if (kind == "split") row.kind = MEllRow::Kind::Split;
            else if (kind == "inert") row.kind = MEllRow::Kind::Inert;
            else if (kind == "generic") row.kind = MEllRow::Kind::Generic;
            else throw ParseError(sec.line, "unknown M_ell kind '" + kind + "'");
            std::array<Rational, 3> rx{};
            bool row_exact = true;
            for (int j = 0; j < 3; ++j) {
                ParsedValue pv = parse_value(sec.require("M" + std::to_string(j + 1)), inst.p,
                                             inst.precision, sec.line);
                row.M[static_cast<std::size_t>(j)] = pv.value;
                if (pv.exact) rx[static_cast<std::size_t>(j)] = *pv.exact;
                else row_exact = false;
            }
            if (row_exact) row.exact = rx;
            if (const std::string* o = sec.find("o_ell")) {
                ParsedValue pv = parse_value(*o, inst.p, inst.precision, sec.line);
                if (!pv.exact) throw ParseError(sec.line, "o_ell must be exact");
                row.o_ell = pv.exact;
            }
            inst.m_ell.push_back(row);
        } else if (sec.name == "unit_data") {
            UnitData ud;
            for (int j = 0; j < 3; ++j)
                ud.u_L[static_cast<std::size_t>(j)] =
                    parse_value(sec.require("uL" + std::to_string(j + 1)), inst.p, inst.precision, sec.line).value;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    ud.u_M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        parse_value(sec.require("uM" + std::to_string(i + 1) + std::to_string(j + 1)),
                                    inst.p, inst.precision, sec.line).value;
            std::string o = sec.require("O");
            std::istringstream rows(o);
            std::string rowtok;
            int i = 0;
            while (std::getline(rows, rowtok, ';')) {
                std::istringstream cols(rowtok);
                std::string coltok;
                int j = 0;
                while (std::getline(cols, coltok, ',')) {
                    if (i > 2 || j > 2) throw ParseError(sec.line, "O matrix must be 3x3");
                    ud.O[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(Int(coltok));
                    ++j;
                }
                if (j != 3) throw ParseError(sec.line, "O matrix row needs 3 entries");
                ++i;
            }
            if (i != 3) throw ParseError(sec.line, "O matrix needs 3 rows");
            inst.unit_data = ud;
        } else if (sec.name == "assumptions") {
            if (const std::string* f = sec.find("flags")) {
                std::istringstream fs(*f);
                std::string tok;
                while (std::getline(fs, tok, ','))
                    if (!tok.empty()) inst.assumption_flags.push_back(tok);
            }
        }
    }
    if (const std::string* a = head->find("alpha"))
        inst.alpha = parse_value(*a, inst.p, inst.precision, head->line).value;

    if (inst.unit_data && !(got_L && got_M)) {
        // derive L and M from the raw units
        for (int j = 0; j < 3; ++j)
            inst.L[static_cast<std::size_t>(j)] = normalized_log(inst.unit_data->u_L[static_cast<std::size_t>(j)], inst.nu);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    normalized_log(inst.unit_data->u_M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], inst.nu);
        all_exact = false;
        got_L = got_M = true;
    }
    if (!got_L || !got_M) throw ParseError(1, "instance needs [L] and [M] sections or unit_data");
    if (all_exact) {
        inst.L_exact = Lx;
        inst.M_exact = Mx;
    }
    validate_pattern(inst);
    validate_unit_data(inst);
    return inst;
}

inline RegulatorInstance ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file: " + path);
    return parse_instance(in);
}

inline std::string format_exact_or_padic(const PadicNumber& v, const std::optional<Rational>& ex) {
    if (ex) {
        if (*ex == 0) return "0";
        if (boost::multiprecision::denominator(*ex) == 1)
            return "int:" + boost::multiprecision::numerator(*ex).str();
        return "rat:" + boost::multiprecision::numerator(*ex).str() + "/" +
               boost::multiprecision::denominator(*ex).str();
    }
    return format_padic(v);
}

inline std::string emit_instance(const RegulatorInstance& inst) {
    std::ostringstream os;
    os << "# p-adic regulator instance\n";
    os << "[instance]\n";
    os << "format = 1\n";
    os << "prime = " << inst.p << "\n";
    os << "precision = " << inst.precision << "\n";
    os << "nu = " << inst.nu << "\n";
    os << "rep_class = \"" << rep_class_name(inst.rep_class) << "\"\n";
    if (inst.alpha) os << "alpha = \"" << format_padic(*inst.alpha) << "\"\n";
    os << "\n[L]\n";
    for (int j = 0; j < 3; ++j)
        os << "L" << j + 1 << " = \""
           << format_exact_or_padic(inst.L[static_cast<std::size_t>(j)],
                                    inst.L_exact ? std::optional<Rational>((*inst.L_exact)[static_cast<std::size_t>(j)])
                                                 : std::nullopt)
           << "\"\n";
    os << "\n[M]\n";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            os << "M" << i + 1 << j + 1 << " = \""
               << format_exact_or_padic(inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                        inst.M_exact ? std::optional<Rational>(
                                                           (*inst.M_exact)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                                                     : std::nullopt)
               << "\"\n";
    for (const auto& row : inst.m_ell) {
        os << "\n[[M_ell]]\n";
        os << "ell = " << row.ell << "\n";
        os << "kind = \"" << mell_kind_name(row.kind) << "\"\n";
        for (int j = 0; j < 3; ++j)
            os << "M" << j + 1 << " = \""
               << format_exact_or_padic(row.M[static_cast<std::size_t>(j)],
                                        row.exact ? std::optional<Rational>((*row.exact)[static_cast<std::size_t>(j)])
                                                  : std::nullopt)
               << "\"\n";
        if (row.o_ell)
            os << "o_ell = \"rat:" << boost::multiprecision::numerator(*row.o_ell).str() << "/"
               << boost::multiprecision::denominator(*row.o_ell).str() << "\"\n";
    }
    if (!inst.assumption_flags.empty()) {
        os << "\n[assumptions]\nflags = \"";
        for (std::size_t i = 0; i < inst.assumption_flags.size(); ++i)
            os << (i ? "," : "") << inst.assumption_flags[i];
        os << "\"\n";
    }
    return os.str();
}

// ---- synthetic instances ----

// Deterministic pseudo-random instance respecting the class's vanishing
// pattern; free entries are small exact integers so the exact oracle path is
// available, and the three conditions are rejection-sampled to hold.
inline RegulatorInstance synth_instance(RepClass rc, unsigned long seed, unsigned long p = 5,
                                        long precision = 16) {
    for (unsigned long attempt = 0; attempt < 64; ++attempt) {
        std::mt19937_64 rng(seed * 1000003ULL + attempt);
        auto draw = [&]() {
            long v = static_cast<long>(rng() % 3999) + 1;
            return (rng() & 1) ? v : -v;
        };
        RegulatorInstance inst;
        inst.p = p;
        inst.precision = precision;
        inst.nu = 1;
        inst.rep_class = rc;
        std::array<Rational, 3> Lx{};
        std::array<std::array<Rational, 3>, 3> Mx{};
        auto fill = [&](int mask_kind) {
            // mask_kind selects the vanishing pattern
            for (int j = 0; j < 3; ++j) Lx[static_cast<std::size_t>(j)] = draw();
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) Mx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = draw();
            if (mask_kind == 1) { // RM
                Lx[0] = Lx[2] = 0;
                Mx[0][1] = Mx[1][2] = Mx[1][0] = Mx[2][1] = 0;
            } else if (mask_kind == 2) { // CM / Klein
                Lx[1] = 0;
                Mx[0][1] = Mx[1][0] = Mx[1][2] = Mx[2][1] = 0;
            }
        };
        switch (rc) {
            case RepClass::Exotic: fill(0); break;
            case RepClass::RM: fill(1); break;
            case RepClass::CM: fill(2); break;
            case RepClass::Klein:
                fill(2);
                Lx[2] = Lx[0];
                Mx[2][2] = Mx[0][0];
                Mx[2][0] = Mx[0][2];
                break;
        }
        inst.L_exact = Lx;
        inst.M_exact = Mx;
        for (int j = 0; j < 3; ++j)
            inst.L[static_cast<std::size_t>(j)] = PadicNumber::from_rational(p, Lx[static_cast<std::size_t>(j)], precision);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    PadicNumber::from_rational(p, Mx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], precision);

        auto add_row = [&](long ell, MEllRow::Kind kind) {
            MEllRow row;
            row.ell = ell;
            row.kind = kind;
            std::array<Rational, 3> rx{};
            for (int j = 0; j < 3; ++j) rx[static_cast<std::size_t>(j)] = draw();
            if (kind == MEllRow::Kind::Split) rx[0] = rx[2] = 0;
            if (kind == MEllRow::Kind::Inert) rx[1] = 0;
            for (int j = 0; j < 3; ++j)
                row.M[static_cast<std::size_t>(j)] = PadicNumber::from_rational(p, rx[static_cast<std::size_t>(j)], precision);
            row.exact = rx;
            inst.m_ell.push_back(row);
        };
        const long ells[7] = {7, 11, 13, 17, 19, 23, 29};
        if (rc == RepClass::RM) {
            add_row(ells[0], MEllRow::Kind::Split);
            add_row(ells[1], MEllRow::Kind::Split);
            add_row(ells[2], MEllRow::Kind::Inert);
            add_row(ells[3], MEllRow::Kind::Inert);
            add_row(ells[4], MEllRow::Kind::Inert);
        } else {
            for (long ell : ells) add_row(ell, MEllRow::Kind::Generic);
        }
        inst.alpha = PadicNumber::from_int(p, 1, precision);

        validate_pattern(inst);
        Conditions cond = check_conditions_exact(inst);
        if (cond.res == Tri::True && cond.sl == Tri::True && cond.reg == Tri::True) return inst;
    }
    throw Error("condition rejection sampling failed; try another seed");
}

} // namespace padicreg
