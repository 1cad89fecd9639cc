#ifndef MOMENT_FIBER_REPORT_HPP
#define MOMENT_FIBER_REPORT_HPP

// Analysis reports, their JSON/text forms, and the input formats of the
// command-line front end. Indices are 1-based in every serialized form.
// Rationals (and integers inside certificates) are written as "p/q".

#include "moment_fiber/theta.hpp"
#include "moment_fiber/torus.hpp"

#include "json.hpp"

#include <sstream>

namespace moment_fiber::report {

using nlohmann::json;

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : InputError(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line),
          column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

// ---------------------------------------------------------------------------
// Rationals

inline std::string format_rational(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline bool is_integer_text(const std::string& s) {
    std::size_t i = s.size() > 0 && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
        throw InputError("malformed rational '" + s + "'");
    }
    const Integer d(den);
    if (d == 0) throw InputError("zero denominator in '" + s + "'");
    return Rational(Integer(num), d);
}

// ---------------------------------------------------------------------------
// Weight matrix input

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline WeightMatrix weights_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw ParseError("\"weights\" must be a nonempty array of rows", 1, 1);
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.is_array()) throw ParseError("row " + std::to_string(i + 1) + " is not an array", 1, 1);
        IntVector v;
        for (const auto& e : row) {
            if (!e.is_number_integer()) {
                throw ParseError("row " + std::to_string(i + 1) + " has a non-integer entry", 1, 1);
            }
            v.emplace_back(e.get<long long>());
        }
        out.push_back(std::move(v));
    }
    if (out.front().empty()) throw InputError("weights must have at least one column");
    return WeightMatrix(IntMatrix::from_rows(out));
}

inline WeightMatrix weights_from_csv(const std::string& text) {
    std::vector<IntVector> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        IntVector row;
        std::size_t pos = 0;
        for (;;) {
            const std::size_t comma = line.find(',', pos);
            const std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            const std::string tok = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
            if (!is_integer_text(tok)) {
                throw ParseError("expected an integer, got '" + tok + "'", line_no, pos + (b == std::string::npos ? 0 : b) + 1);
            }
            row.emplace_back(tok);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(rows.front().size()),
                             line_no, 1);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no rows found", line_no == 0 ? 1 : line_no, 1);
    return WeightMatrix(IntMatrix::from_rows(rows));
}

}  // namespace detail

// JSON object {"weights": [[...], ...]}, a bare JSON array of rows, or CSV.
inline WeightMatrix parse_weights(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty input", 1, 1);
    if (text[first] == '{' || text[first] == '[') {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            const auto [l, c] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
            throw ParseError("malformed JSON", l, c);
        }
        if (doc.is_object()) {
            if (!doc.contains("weights")) throw ParseError("missing \"weights\" key", 1, 1);
            return detail::weights_from_json(doc["weights"]);
        }
        return detail::weights_from_json(doc);
    }
    return detail::weights_from_csv(text);
}

// ---------------------------------------------------------------------------
// Analysis

struct AnalyzeOptions {
    std::size_t max_components = 4096;
};

struct AnalysisReport {
    IntMatrix weights;
    std::size_t rank = 0;
    bool locally_free = false;
    std::vector<RatVector> action_kernel;
    bool stable = false;
    HullCertificate stability_certificate;
    bool visible = false;
    std::optional<VisibleDecomposition> decomposition;
    std::optional<NotVisible> not_visible;
    std::vector<RatVector> cartan_subspace;
    PolarityResult polarity;
    bool irreducible = false;
    bool normal = false;
    std::size_t fiber_dimension = 0;
    std::size_t global_modality = 0;
    IndexSet dependent;
    IndexSet independent;
    Integer component_count;
    bool components_listed = false;
    std::vector<IndexSet> components;
    std::optional<NonVisibleWitness> witness;
    IndexSet reduction_support;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

inline AnalysisReport analyze(const WeightMatrix& w, const AnalyzeOptions& opts = {}) {
    AnalysisReport r;
    r.weights = w.matrix();
    r.rank = rank(w);
    r.locally_free = is_locally_free(w);
    r.action_kernel = kernel_of_action(w);

    const auto st = is_stable(w);
    r.stable = st.stable;
    r.stability_certificate = st.certificate;

    auto vis = visible_decomposition(w);
    if (auto* d = std::get_if<VisibleDecomposition>(&vis)) {
        r.visible = true;
        r.decomposition = std::move(*d);
        r.cartan_subspace = cartan_subspace(w);
    } else {
        r.not_visible = std::get<NotVisible>(vis);
        r.witness = nonvisible_closed_witness(w);
    }
    r.polarity = polarity(w);

    const auto comps = components(w, opts.max_components);
    r.irreducible = comps.irreducible;
    r.normal = comps.normal;
    r.fiber_dimension = comps.fiber_dimension;
    r.component_count = comps.count();
    r.components_listed = comps.listed;
    r.components = comps.components;
    const auto split = split_indices(w);
    r.dependent = split.dependent;
    r.independent = split.independent;
    r.global_modality = global_modality(w);
    r.reduction_support = reduction_support(w);
    return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline json index_json(const IndexSet& s) {
    json a = json::array();
    for (std::size_t i : s) a.push_back(i + 1);
    return a;
}

inline IndexSet index_from(const json& a) {
    if (!a.is_array()) throw InputError("expected an index array");
    IndexSet out;
    for (const auto& e : a) {
        if (!e.is_number_unsigned() || e.get<std::size_t>() == 0) throw InputError("indices are positive integers");
        out.push_back(e.get<std::size_t>() - 1);
    }
    return out;
}

inline double approx(const Rational& q) { return q.convert_to<double>(); }

inline void put_rats(json& j, const std::string& key, const RatVector& v, bool hint) {
    json a = json::array();
    json h = json::array();
    for (const auto& q : v) {
        a.push_back(format_rational(q));
        h.push_back(approx(q));
    }
    j[key] = std::move(a);
    if (hint) j[key + "_approx"] = std::move(h);
}

inline void put_ints(json& j, const std::string& key, const IntVector& v, bool hint) {
    put_rats(j, key, RatVector(v.begin(), v.end()), hint);
}

inline RatVector rats_from(const json& a) {
    if (!a.is_array()) throw InputError("expected an array of rationals");
    RatVector out;
    for (const auto& e : a) {
        if (!e.is_string()) throw InputError("rationals must be \"p/q\" strings");
        out.push_back(parse_rational(e.get<std::string>()));
    }
    return out;
}

inline IntVector ints_from(const json& a) {
    IntVector out;
    for (const auto& q : rats_from(a)) {
        if (boost::multiprecision::denominator(q) != 1) throw InputError("expected an integral vector");
        out.push_back(boost::multiprecision::numerator(q));
    }
    return out;
}

inline json rat_rows(const std::vector<RatVector>& rows, bool hint) {
    json a = json::array();
    for (const auto& v : rows) {
        json holder;
        put_rats(holder, "v", v, hint);
        a.push_back(hint ? holder : holder["v"]);
    }
    return a;
}

inline std::vector<RatVector> rat_rows_from(const json& a) {
    if (!a.is_array()) throw InputError("expected an array of vectors");
    std::vector<RatVector> out;
    for (const auto& e : a) out.push_back(rats_from(e.is_object() ? e.at("v") : e));
    return out;
}

inline json certificate_json(const HullCertificate& c, bool hint) {
    json j;
    if (const auto* in = std::get_if<Inside>(&c)) {
        put_rats(j, "inside", in->coeffs, hint);
    } else {
        put_ints(j, "outside", std::get<Outside>(c).functional, hint);
    }
    return j;
}

inline HullCertificate certificate_from(const json& j) {
    if (j.contains("inside")) return Inside{rats_from(j.at("inside"))};
    if (j.contains("outside")) return Outside{ints_from(j.at("outside"))};
    throw InputError("certificate needs \"inside\" or \"outside\"");
}

inline std::string condition_name(VisibilityCondition c) {
    switch (c) {
        case VisibilityCondition::DirectSum: return "direct_sum";
        case VisibilityCondition::BlockDimension: return "block_dimension";
        case VisibilityCondition::RelativeInterior: return "relative_interior";
    }
    return "";
}

inline VisibilityCondition condition_from(const std::string& s) {
    if (s == "direct_sum") return VisibilityCondition::DirectSum;
    if (s == "block_dimension") return VisibilityCondition::BlockDimension;
    if (s == "relative_interior") return VisibilityCondition::RelativeInterior;
    throw InputError("unknown visibility condition '" + s + "'");
}

}  // namespace detail

inline json to_json(const AnalysisReport& r, bool float_hint = false) {
    using namespace detail;
    json j;
    json w = json::array();
    for (const auto& row : r.weights.to_rows()) {
        json jr = json::array();
        for (const auto& e : row) jr.push_back(e.convert_to<long long>());
        w.push_back(std::move(jr));
    }
    j["weights"] = std::move(w);
    j["n"] = r.weights.rows();
    j["r"] = r.weights.cols();
    j["rank"] = r.rank;
    j["properties"] = {{"locally_free", r.locally_free}, {"stable", r.stable},           {"visible", r.visible},
                       {"polar", r.polarity.polar},      {"irreducible", r.irreducible}, {"normal", r.normal}};
    j["fiber_dimension"] = r.fiber_dimension;
    j["global_modality"] = r.global_modality;
    j["split"] = {{"dependent", index_json(r.dependent)}, {"independent", index_json(r.independent)}};

    json comps;
    comps["count"] = r.component_count.str();
    comps["listed"] = r.components_listed;
    json list = json::array();
    for (const auto& c : r.components) list.push_back(index_json(c));
    comps["list"] = std::move(list);
    j["components"] = std::move(comps);

    json cert;
    cert["locally_free"] = {{"rank", r.rank}, {"action_kernel", rat_rows(r.action_kernel, float_hint)}};
    cert["stable"] = certificate_json(r.stability_certificate, float_hint);
    if (r.decomposition) {
        json d;
        d["free_part"] = index_json(r.decomposition->free_part);
        json blocks = json::array();
        for (const auto& b : r.decomposition->blocks) {
            json jb;
            jb["indices"] = index_json(b.indices);
            put_rats(jb, "relation", b.relation, float_hint);
            blocks.push_back(std::move(jb));
        }
        d["blocks"] = std::move(blocks);
        cert["visible"] = std::move(d);
    } else if (r.not_visible) {
        cert["visible"] = {{"condition", condition_name(r.not_visible->condition)},
                           {"reason", r.not_visible->reason}};
    }
    cert["cartan_subspace"] = rat_rows(r.cartan_subspace, float_hint);
    cert["polar"] = {{"quotient_dimension", r.polarity.quotient_dim},
                     {"v_support", index_json(r.polarity.v_support)},
                     {"cartan_dimension", r.polarity.cartan_dim}};
    cert["irreducible"] = {{"independent", index_json(r.independent)}};
    if (r.witness) {
        json wj;
        put_rats(wj, "x", r.witness->pair.x, float_hint);
        put_rats(wj, "phi", r.witness->pair.phi, float_hint);
        wj["x_support"] = index_json(r.witness->x_support);
        wj["phi_support"] = index_json(r.witness->phi_support);
        put_ints(wj, "beta", r.witness->beta, float_hint);
        cert["nonvisible_witness"] = std::move(wj);
    } else {
        cert["nonvisible_witness"] = nullptr;
    }
    j["certificates"] = std::move(cert);
    j["reduction_support"] = index_json(r.reduction_support);
    return j;
}

inline AnalysisReport from_json(const json& j) {
    using namespace detail;
    try {
        AnalysisReport r;
        r.weights = parse_weights(j.at("weights").dump()).matrix();
        r.rank = j.at("rank").get<std::size_t>();
        const auto& p = j.at("properties");
        r.locally_free = p.at("locally_free").get<bool>();
        r.stable = p.at("stable").get<bool>();
        r.visible = p.at("visible").get<bool>();
        r.polarity.polar = p.at("polar").get<bool>();
        r.irreducible = p.at("irreducible").get<bool>();
        r.normal = p.at("normal").get<bool>();
        r.fiber_dimension = j.at("fiber_dimension").get<std::size_t>();
        r.global_modality = j.at("global_modality").get<std::size_t>();
        r.dependent = index_from(j.at("split").at("dependent"));
        r.independent = index_from(j.at("split").at("independent"));
        const auto& c = j.at("components");
        r.component_count = Integer(c.at("count").get<std::string>());
        r.components_listed = c.at("listed").get<bool>();
        for (const auto& e : c.at("list")) r.components.push_back(index_from(e));

        const auto& cert = j.at("certificates");
        r.action_kernel = rat_rows_from(cert.at("locally_free").at("action_kernel"));
        r.stability_certificate = certificate_from(cert.at("stable"));
        if (cert.contains("visible")) {
            const auto& v = cert.at("visible");
            if (v.contains("blocks")) {
                VisibleDecomposition d;
                d.free_part = index_from(v.at("free_part"));
                for (const auto& b : v.at("blocks")) {
                    d.blocks.push_back({index_from(b.at("indices")), rats_from(b.at("relation"))});
                }
                r.decomposition = std::move(d);
            } else {
                r.not_visible = NotVisible{condition_from(v.at("condition").get<std::string>()),
                                           v.at("reason").get<std::string>()};
            }
        }
        r.cartan_subspace = rat_rows_from(cert.at("cartan_subspace"));
        const auto& pol = cert.at("polar");
        r.polarity.quotient_dim = pol.at("quotient_dimension").get<std::size_t>();
        r.polarity.v_support = index_from(pol.at("v_support"));
        r.polarity.cartan_dim = pol.at("cartan_dimension").get<std::size_t>();
        const auto& wj = cert.at("nonvisible_witness");
        if (!wj.is_null()) {
            NonVisibleWitness wit;
            wit.pair.x = rats_from(wj.at("x"));
            wit.pair.phi = rats_from(wj.at("phi"));
            wit.x_support = index_from(wj.at("x_support"));
            wit.phi_support = index_from(wj.at("phi_support"));
            wit.beta = ints_from(wj.at("beta"));
            r.witness = std::move(wit);
        }
        r.reduction_support = index_from(j.at("reduction_support"));
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Text

namespace detail {

inline std::string set_text(const IndexSet& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
    return out + "}";
}

inline std::string vec_text(const RatVector& v) {
    std::string out = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        const auto& q = v[k];
        out += (k ? ", " : "") + (boost::multiprecision::denominator(q) == 1 ? boost::multiprecision::numerator(q).str()
                                                                            : format_rational(q));
    }
    return out + ")";
}

inline std::string vec_text(const IntVector& v) { return vec_text(RatVector(v.begin(), v.end())); }

}  // namespace detail

inline std::string to_text(const AnalysisReport& r, bool color = false) {
    using namespace detail;
    auto flag = [&](bool b, bool pad = true) {
        std::string s = color ? (b ? "\033[32myes\033[0m" : "\033[31mno\033[0m") : (b ? "yes" : "no");
        if (pad && !b) s += ' ';
        return s;
    };
    std::ostringstream o;
    o << "weights (" << r.weights.rows() << " x " << r.weights.cols() << "):\n";
    for (const auto& row : r.weights.to_rows()) o << "  " << vec_text(row) << "\n";
    o << "rank " << r.rank << ", fiber dimension " << r.fiber_dimension << ", modality " << r.global_modality << "\n";
    o << "I_d = " << set_text(r.dependent) << ", I_f = " << set_text(r.independent) << "\n\n";

    o << "locally free  " << flag(r.locally_free);
    if (!r.locally_free) o << "   kernel of the action: " << vec_text(r.action_kernel.front());
    o << "\n";
    o << "stable        " << flag(r.stable);
    if (const auto* in = std::get_if<Inside>(&r.stability_certificate)) {
        o << "   relation " << vec_text(in->coeffs);
    } else {
        o << "   cocharacter " << vec_text(std::get<Outside>(r.stability_certificate).functional);
    }
    o << "\n";
    o << "visible       " << flag(r.visible);
    if (r.decomposition) {
        o << "   I_0 = " << set_text(r.decomposition->free_part);
        for (const auto& b : r.decomposition->blocks) o << ", " << set_text(b.indices) << " " << vec_text(b.relation);
    } else if (r.not_visible) {
        o << "   " << r.not_visible->reason;
    }
    o << "\n";
    o << "polar         " << flag(r.polarity.polar) << "   dim V//T = " << r.polarity.quotient_dim;
    if (r.polarity.polar) {
        o << ", v supported on " << set_text(r.polarity.v_support) << " has dim c_v = " << r.polarity.cartan_dim;
    }
    o << "\n";
    o << "irreducible   " << flag(r.irreducible, false) << "\n";
    o << "normal        " << flag(r.normal, false) << "\n\n";

    o << "components: " << r.component_count.str();
    if (r.components_listed) {
        o << "\n";
        for (const auto& c : r.components) o << "  " << set_text(c) << "\n";
    } else {
        o << " (not listed)\n";
    }
    if (!r.cartan_subspace.empty()) {
        o << "cartan subspace:\n";
        for (const auto& v : r.cartan_subspace) o << "  " << vec_text(v) << "\n";
    }
    if (r.witness) {
        o << "closed pair with non-semisimple x: x = " << vec_text(r.witness->pair.x)
          << ", phi = " << vec_text(r.witness->pair.phi) << ", beta = " << vec_text(r.witness->beta) << "\n";
    }
    o << "reduction support: " << set_text(r.reduction_support) << "\n";
    return o.str();
}

// ---------------------------------------------------------------------------
// Kac diagram requests

struct KacRequest {
    theta::CartanType type;
    int twist = 1;
    theta::NodeOrder order = theta::NodeOrder::Display;
    std::vector<int> labels;  // user order
    bool scan = false;
};

// "E6 twist=1 labels=1,1,0,1,1,1,1", "E7 twist=1 scan", "F4 labels=... order=bourbaki"
inline KacRequest parse_kac_spec(const std::string& spec) {
    std::istringstream in(spec);
    std::string tok;
    KacRequest req;
    bool have_type = false, have_labels = false;
    while (in >> tok) {
        if (!have_type) {
            req.type = theta::parse_type(tok);
            theta::require_supported(req.type);
            have_type = true;
            continue;
        }
        if (tok == "scan") {
            req.scan = true;
            continue;
        }
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw InputError("unexpected token '" + tok + "' in diagram spec");
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        if (key == "twist") {
            if (value != "1" && value != "2" && value != "3") throw InputError("twist must be 1, 2 or 3");
            req.twist = std::stoi(value);
        } else if (key == "labels") {
            std::istringstream lv(value);
            std::string cell;
            while (std::getline(lv, cell, ',')) {
                if (!is_integer_text(cell) || cell.size() > 6) throw InputError("bad label '" + cell + "'");
                req.labels.push_back(std::stoi(cell));
            }
            have_labels = true;
        } else if (key == "order") {
            if (value == "display") {
                req.order = theta::NodeOrder::Display;
            } else if (value == "bourbaki") {
                req.order = theta::NodeOrder::Bourbaki;
            } else {
                throw InputError("order must be display or bourbaki");
            }
        } else {
            throw InputError("unknown key '" + key + "' in diagram spec");
        }
    }
    if (!have_type) throw InputError("diagram spec needs a type such as E6");
    if (!req.scan && !have_labels) throw InputError("diagram spec needs labels=... or scan");
    return req;
}

}  // namespace moment_fiber::report

#endif  // MOMENT_FIBER_REPORT_HPP
