#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/ellcurve.hpp"
#include "core/numberfield.hpp"

namespace tlab {

// One catalog row: torsion pair, base field, curve, optional extra points.
// Elements serialize as power-basis arrays of rational strings; a bare string
// is shorthand for a rational element.
struct TableRecord {
    unsigned table = 0;
    unsigned m = 1, n = 1;
    std::optional<Integer> field_d;            // quadratic field Q(sqrt d)
    std::vector<Rational> field_poly;          // or monic defining polynomial (ascending)
    bool is_tate = false;
    std::vector<std::vector<Rational>> curve_coeffs; // 2 entries (tate) or 5 (long)
    std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> infinite_points;
    std::string notes;

    std::string id() const;
    NumberField build_field() const;
    std::pair<ECurve<NFElem>, std::optional<EPoint<NFElem>>> build_curve(const NumberField& K) const;
    std::vector<EPoint<NFElem>> build_points(const NumberField& K) const;
};

struct TableFile {
    unsigned table = 0;
    unsigned field_degree = 0;
    std::vector<TableRecord> rows;
};

TableFile load_table_file(const std::string& path);
std::string serialize_table_file(const TableFile& file); // canonical round-trip form

// Named standalone curves (the finite-field experiment inputs and the
// explicitly studied examples).
struct NamedCurve {
    std::string name;
    std::optional<Integer> field_d;
    std::vector<Rational> field_poly;
    bool is_tate = false;
    std::vector<std::vector<Rational>> curve_coeffs;
    std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> points;

    NumberField build_field() const;
    std::pair<ECurve<NFElem>, std::optional<EPoint<NFElem>>> build_curve(const NumberField& K) const;
};

std::vector<NamedCurve> load_named_curves(const std::string& path);

// FNV-1a of a file's bytes; pins the shipped data files.
std::uint64_t file_checksum(const std::string& path);

} // namespace tlab
