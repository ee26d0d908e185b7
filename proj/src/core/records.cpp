#include "core/records.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tlab {

using json = nlohmann::ordered_json;

namespace {

std::vector<Rational> parse_element(const json& j) {
    std::vector<Rational> out;
    if (j.is_string()) {
        out.emplace_back(j.get<std::string>());
        return out;
    }
    if (j.is_number_integer()) {
        out.emplace_back(static_cast<long>(j.get<long long>()));
        return out;
    }
    if (!j.is_array()) throw input_error("element must be a string or array of rationals");
    for (const auto& c : j) {
        if (c.is_string()) out.emplace_back(c.get<std::string>());
        else if (c.is_number_integer()) out.emplace_back(static_cast<long>(c.get<long long>()));
        else throw input_error("element coefficient must be a rational string");
    }
    return out;
}

json element_to_json(const std::vector<Rational>& e) {
    json arr = json::array();
    for (const auto& c : e) arr.push_back(c.to_string());
    return arr;
}

NFElem to_elem(const NumberField& K, const std::vector<Rational>& coords) {
    if (coords.size() > K->degree) {
        for (std::size_t i = K->degree; i < coords.size(); ++i)
            if (!coords[i].is_zero()) throw input_error("element has more coordinates than the field degree");
    }
    std::vector<Rational> c = coords;
    c.resize(K->degree, Rational(0));
    return NFElem(K, std::move(c));
}

void parse_field_into(const json& j, std::optional<Integer>& d, std::vector<Rational>& poly) {
    if (j.contains("d")) {
        d = Integer(j["d"].is_string() ? j["d"].get<std::string>()
                                       : std::to_string(j["d"].get<long long>()));
        return;
    }
    if (j.contains("poly")) {
        poly = parse_element(j["poly"]);
        return;
    }
    throw input_error("field spec needs 'd' or 'poly'");
}

void parse_curve_into(const json& j, bool& is_tate, std::vector<std::vector<Rational>>& coeffs) {
    if (j.contains("tate")) {
        is_tate = true;
        for (const auto& c : j["tate"]) coeffs.push_back(parse_element(c));
        if (coeffs.size() != 2) throw input_error("tate form needs [a, b]");
        return;
    }
    if (j.contains("long")) {
        is_tate = false;
        for (const auto& c : j["long"]) coeffs.push_back(parse_element(c));
        if (coeffs.size() != 5) throw input_error("long form needs [a1, a2, a3, a4, a6]");
        return;
    }
    throw input_error("curve spec needs 'tate' or 'long'");
}

NumberField build_field_common(const std::optional<Integer>& d, const std::vector<Rational>& poly) {
    if (d) return quadratic_field(*d);
    if (poly.empty()) throw input_error("record has no field");
    QPoly f(Rational(0), poly);
    if (f.degree() == 1) return rationals();
    return make_number_field(f);
}

std::pair<ECurve<NFElem>, std::optional<EPoint<NFElem>>> build_curve_common(
    const NumberField& K, bool is_tate, const std::vector<std::vector<Rational>>& coeffs) {
    if (is_tate) {
        auto [C, P] = curve_from_tate(to_elem(K, coeffs[0]), to_elem(K, coeffs[1]));
        return {C, P};
    }
    ECurve<NFElem> C(to_elem(K, coeffs[0]), to_elem(K, coeffs[1]), to_elem(K, coeffs[2]),
                     to_elem(K, coeffs[3]), to_elem(K, coeffs[4]));
    return {C, std::nullopt};
}

} // namespace

std::string TableRecord::id() const {
    return "table" + std::to_string(table) + "-(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

NumberField TableRecord::build_field() const { return build_field_common(field_d, field_poly); }

std::pair<ECurve<NFElem>, std::optional<EPoint<NFElem>>> TableRecord::build_curve(
    const NumberField& K) const {
    return build_curve_common(K, is_tate, curve_coeffs);
}

std::vector<EPoint<NFElem>> TableRecord::build_points(const NumberField& K) const {
    std::vector<EPoint<NFElem>> out;
    for (const auto& [x, y] : infinite_points)
        out.push_back(EPoint<NFElem>::affine(to_elem(K, x), to_elem(K, y)));
    return out;
}

TableFile load_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open table file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("table file parse error in " + path + ": " + e.what());
    }
    TableFile f;
    f.table = j.at("table").get<unsigned>();
    f.field_degree = j.at("field_degree").get<unsigned>();
    for (const auto& row : j.at("rows")) {
        TableRecord r;
        r.table = f.table;
        auto tor = row.at("torsion");
        r.m = tor.at(0).get<unsigned>();
        r.n = tor.at(1).get<unsigned>();
        parse_field_into(row.at("field"), r.field_d, r.field_poly);
        parse_curve_into(row.at("curve"), r.is_tate, r.curve_coeffs);
        if (row.contains("points_infinite"))
            for (const auto& pt : row["points_infinite"])
                r.infinite_points.emplace_back(parse_element(pt.at(0)), parse_element(pt.at(1)));
        if (row.contains("notes")) r.notes = row["notes"].get<std::string>();
        f.rows.push_back(std::move(r));
    }
    return f;
}

std::string serialize_table_file(const TableFile& file) {
    json j;
    j["table"] = file.table;
    j["field_degree"] = file.field_degree;
    j["rows"] = json::array();
    for (const auto& r : file.rows) {
        json row;
        row["torsion"] = {r.m, r.n};
        if (r.field_d) row["field"] = {{"d", r.field_d->to_string()}};
        else row["field"] = {{"poly", element_to_json(r.field_poly)}};
        json curve;
        json cc = json::array();
        for (const auto& c : r.curve_coeffs) cc.push_back(element_to_json(c));
        curve[r.is_tate ? "tate" : "long"] = cc;
        row["curve"] = curve;
        if (!r.infinite_points.empty()) {
            json pts = json::array();
            for (const auto& [x, y] : r.infinite_points)
                pts.push_back(json::array({element_to_json(x), element_to_json(y)}));
            row["points_infinite"] = pts;
        }
        if (!r.notes.empty()) row["notes"] = r.notes;
        j["rows"].push_back(row);
    }
    return j.dump(2);
}

NumberField NamedCurve::build_field() const { return build_field_common(field_d, field_poly); }

std::pair<ECurve<NFElem>, std::optional<EPoint<NFElem>>> NamedCurve::build_curve(
    const NumberField& K) const {
    return build_curve_common(K, is_tate, curve_coeffs);
}

std::vector<NamedCurve> load_named_curves(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open curve file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("curve file parse error: " + std::string(e.what()));
    }
    std::vector<NamedCurve> out;
    for (const auto& [name, spec] : j.at("curves").items()) {
        NamedCurve c;
        c.name = name;
        if (spec.contains("field")) parse_field_into(spec["field"], c.field_d, c.field_poly);
        else c.field_poly = {Rational(0), Rational(1)}; // Q
        parse_curve_into(spec.at("curve"), c.is_tate, c.curve_coeffs);
        if (spec.contains("points"))
            for (const auto& pt : spec["points"])
                c.points.emplace_back(parse_element(pt.at(0)), parse_element(pt.at(1)));
        out.push_back(std::move(c));
    }
    return out;
}

std::uint64_t file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file for checksum: " + path);
    std::uint64_t h = 14695981039346656037ULL;
    char ch;
    while (in.get(ch)) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace tlab
