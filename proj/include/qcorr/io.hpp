#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorr/bell.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/prob.hpp"
#include "qcorr/qubit.hpp"

namespace qcorr::io {

// Shortest decimal form with at most `digits` significant digits.
inline std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << content;
    if (!out) throw io_error("write failed for " + path);
}

// --- two-qubit state JSON ----------------------------------------------
// {"re": 4x4, "im": 4x4}, row-major, basis |00>,|01>,|10>,|11> with qubit
// A the left factor. 17 significant digits so values round-trip exactly.

inline std::string write_state_json(const TwoQubitState& state) {
    const Mat4& m = state.matrix();
    std::ostringstream os;
    auto emit_part = [&](bool imaginary) {
        os << '[';
        for (std::size_t i = 0; i < 4; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < 4; ++j) {
                const cplx& z = m(i, j);
                os << (j ? "," : "")
                   << format_sig(imaginary ? z.imag() : z.real(), 17);
            }
            os << ']';
        }
        os << ']';
    };
    os << "{\"re\":";
    emit_part(false);
    os << ",\"im\":";
    emit_part(true);
    os << "}";
    return os.str();
}

inline TwoQubitState parse_state_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("state JSON: ") + e.what());
    }
    if (!j.contains("re") || !j.contains("im"))
        throw validation_error("state JSON: expected \"re\" and \"im\" members");
    Mat4 m;
    for (const char* key : {"re", "im"}) {
        const auto& part = j.at(key);
        if (!part.is_array() || part.size() != 4)
            throw validation_error("state JSON: parts must be 4x4 arrays");
        for (std::size_t i = 0; i < 4; ++i) {
            const auto& row = part.at(i);
            if (!row.is_array() || row.size() != 4)
                throw validation_error("state JSON: parts must be 4x4 arrays");
            for (std::size_t j2 = 0; j2 < 4; ++j2) {
                if (!row.at(j2).is_number())
                    throw validation_error("state JSON: entries must be numbers");
                const double v = row.at(j2).get<double>();
                if (key[0] == 'r')
                    m(i, j2) += v;
                else
                    m(i, j2) += cplx(0.0, v);
            }
        }
    }
    return TwoQubitState(m);
}

inline TwoQubitState load_state(const std::string& path) {
    return parse_state_json(read_file(path));
}

inline void save_state(const TwoQubitState& state, const std::string& path) {
    write_file(path, write_state_json(state) + "\n");
}

// --- joint table CSV -----------------------------------------------------
// One table row per line, comma-separated decimal floats. '#' lines are
// treated as comments.

inline std::string write_table_csv(const JointTable& t) {
    std::ostringstream os;
    for (std::size_t a = 0; a < t.rows(); ++a) {
        for (std::size_t b = 0; b < t.cols(); ++b)
            os << (b ? "," : "") << format_sig(t(a, b), 17);
        os << '\n';
    }
    return os.str();
}

inline JointTable parse_table_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw validation_error("table CSV: bad number '" + cell + "'");
            }
            while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos])))
                ++pos;
            if (pos != cell.size())
                throw validation_error("table CSV: bad number '" + cell + "'");
            row.push_back(v);
        }
        if (row.empty()) throw validation_error("table CSV: empty row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw validation_error("table CSV: no data");
    const std::size_t cols = rows.front().size();
    std::vector<double> flat;
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw validation_error("table CSV: ragged rows");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return JointTable(rows.size(), cols, std::move(flat));
}

inline JointTable load_table(const std::string& path) {
    return parse_table_csv(read_file(path));
}

// --- LHV model JSON -------------------------------------------------------
// {"lambda_weights": [...], "conditionals": {"AB": [table...], "ABp": ...,
//  "ApB": ..., "ApBp": ...}} with one 2x2 table per lambda.

inline std::string write_model_json(const LhvModel& m) {
    nlohmann::json j;
    j["lambda_weights"] = m.lambda_weights;
    static const char* names[4] = {"AB", "ABp", "ApB", "ApBp"};
    for (std::size_t pair = 0; pair < 4; ++pair) {
        nlohmann::json tables = nlohmann::json::array();
        for (const auto& t : m.conditionals[pair])
            tables.push_back({{t(0, 0), t(0, 1)}, {t(1, 0), t(1, 1)}});
        j["conditionals"][names[pair]] = std::move(tables);
    }
    return j.dump();
}

inline LhvModel parse_model_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("model JSON: ") + e.what());
    }
    LhvModel m;
    try {
        m.lambda_weights = j.at("lambda_weights").get<std::vector<double>>();
        static const char* names[4] = {"AB", "ABp", "ApB", "ApBp"};
        for (std::size_t pair = 0; pair < 4; ++pair) {
            for (const auto& t : j.at("conditionals").at(names[pair])) {
                std::vector<double> flat;
                for (const auto& row : t)
                    for (const auto& cell : row) flat.push_back(cell.get<double>());
                m.conditionals[pair].emplace_back(2, 2, std::move(flat));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("model JSON: ") + e.what());
    }
    validate_model(m);
    return m;
}

inline LhvModel load_model(const std::string& path) {
    return parse_model_json(read_file(path));
}

} // namespace qcorr::io
