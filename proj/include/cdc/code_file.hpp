#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdc_builder.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "matrix.hpp"

namespace cdc {

inline constexpr const char* kCodeFileFormat = "cdc-code";
inline constexpr int kCodeFileVersion = 1;

/// A code read back from disk. `declared_count` is the header's member count,
/// kept separately so a mismatch with the body can be reported rather than rejected.
struct CodeFile {
    int version = kCodeFileVersion;
    std::uint64_t declared_count = 0;
    Cdc code;
};

namespace detail {

inline char digit_char(Elem v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

inline Elem digit_value(char c, unsigned q) {
    unsigned v;
    if (c >= '0' && c <= '9')
        v = c - '0';
    else if (c >= 'a' && c <= 'z')
        v = c - 'a' + 10;
    else
        throw InvalidParameter(std::string("invalid digit '") + c + "' in code file");
    if (v >= q) throw InvalidParameter(std::string("digit '") + c + "' out of range for q=" + std::to_string(q));
    return static_cast<Elem>(v);
}

}  // namespace detail

/// Writes the code as JSON: a self-describing header plus one record per member,
/// each record being the k rows of its canonical generator as strings of base-q digits.
inline void write_code_file(std::ostream& out, const Cdc& code) {
    if (code.field.order() > 36) throw InvalidParameter("code files support q <= 36");
    nlohmann::json j;
    j["format"] = kCodeFileFormat;
    j["version"] = kCodeFileVersion;
    j["q"] = code.field.order();
    j["ambient"] = code.ambient;
    j["dim"] = code.dim;
    j["distance"] = code.distance;
    j["count"] = code.members.size();
    if (code.construction) {
        const auto& p = *code.construction;
        j["construction"] = {{"kind", "parallel"}, {"n", p.n}, {"k", p.k}, {"d", p.d}, {"s", p.s}};
    } else {
        j["construction"] = nullptr;
    }
    j["blocks"] = code.blocks();
    auto members = nlohmann::json::array();
    for (const auto& m : code.members) {
        auto rows = nlohmann::json::array();
        const Matrix& g = m.generator();
        for (std::size_t r = 0; r < g.rows(); ++r) {
            std::string s;
            for (Elem v : g.row(r)) s.push_back(detail::digit_char(v));
            rows.push_back(std::move(s));
        }
        members.push_back(std::move(rows));
    }
    j["members"] = std::move(members);
    out << j.dump(1) << "\n";
}

inline void write_code_file(const std::string& path, const Cdc& code) {
    std::ofstream out(path);
    if (!out) throw InvalidParameter("cannot write " + path);
    write_code_file(out, code);
    if (!out) throw InvalidParameter("error writing " + path);
}

/// Parses a code file. Structural problems throw InvalidParameter; a generator whose rows
/// are dependent throws RankDeficient.
inline CodeFile read_code_file(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter(std::string("code file is not valid JSON: ") + e.what());
    }
    try {
        if (j.value("format", "") != kCodeFileFormat) throw InvalidParameter("not a cdc-code file");
        CodeFile f{j.at("version").get<int>(), j.at("count").get<std::uint64_t>(),
                   Cdc{Field::of_order(j.at("q").get<unsigned>()), j.at("ambient").get<unsigned>(),
                       j.at("dim").get<unsigned>(), j.value("distance", 0u), {}, {}, std::nullopt}};
        if (f.version != kCodeFileVersion)
            throw InvalidParameter("unsupported code file version " + std::to_string(f.version));
        Cdc& code = f.code;
        const unsigned q = code.field.order();
        if (j.contains("construction") && !j["construction"].is_null()) {
            const auto& c = j["construction"];
            code.construction = ParallelParams{q, c.at("n").get<unsigned>(), c.at("k").get<unsigned>(),
                                               c.at("d").get<unsigned>(), c.at("s").get<unsigned>()};
        }
        if (j.contains("blocks")) code.block_sizes = j["blocks"].get<std::vector<std::uint64_t>>();

        for (const auto& rec : j.at("members")) {
            const auto rows = rec.get<std::vector<std::string>>();
            if (rows.size() != code.dim)
                throw InvalidParameter("member has " + std::to_string(rows.size()) + " rows, expected " +
                                       std::to_string(code.dim));
            std::vector<Elem> entries;
            entries.reserve(std::size_t(code.dim) * code.ambient);
            for (const auto& row : rows) {
                if (row.size() != code.ambient)
                    throw InvalidParameter("row '" + row + "' has wrong length, expected " + std::to_string(code.ambient));
                for (char c : row) entries.push_back(detail::digit_value(c, q));
            }
            code.members.push_back(Subspace::canonicalize(Matrix(code.field, code.dim, code.ambient, std::move(entries))));
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter(std::string("malformed code file: ") + e.what());
    }
}

inline CodeFile read_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open " + path);
    return read_code_file(in);
}

}  // namespace cdc
