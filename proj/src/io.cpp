#include "cesaro/io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace cesaro {

namespace {
constexpr int kDigits = std::numeric_limits<double>::max_digits10;
}

void write_matrix_csv(std::ostream& os, const OperatorMatrix& m) {
    const int N = m.shape();
    os << std::setprecision(kDigits);
    for (int n = 0; n <= N; ++n) {
        for (int c = 0; c <= N; ++c) {
            if (c) os << ',';
            os << m(n, c).real() << ',' << m(n, c).imag();
        }
        os << '\n';
    }
}

OperatorMatrix read_matrix_csv(std::istream& is) {
    std::vector<double> fields;
    std::vector<std::size_t> row_len;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::size_t count = 0;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            fields.push_back(std::stod(cell));
            ++count;
        }
        row_len.push_back(count);
    }
    if (row_len.empty()) throw std::invalid_argument("read_matrix_csv: empty input");
    const std::size_t rows = row_len.size();
    for (std::size_t len : row_len)
        if (len != 2 * rows)
            throw std::invalid_argument("read_matrix_csv: row length does not match a square complex matrix");
    std::vector<Complex> entries(rows * rows);
    for (std::size_t i = 0; i < rows * rows; ++i) entries[i] = Complex{fields[2 * i], fields[2 * i + 1]};
    return OperatorMatrix::with_detected_structure(static_cast<int>(rows) - 1, std::move(entries));
}

void write_matrix_json(std::ostream& os, const OperatorMatrix& m) {
    nlohmann::json j;
    const int N = m.shape();
    j["n"] = N;
    j["structure"] = structure_name(m.structure());
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 0; n <= N; ++n) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c <= N; ++c) row.push_back({m(n, c).real(), m(n, c).imag()});
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    os << j.dump();
}

OperatorMatrix read_matrix_json(std::istream& is) {
    nlohmann::json j = nlohmann::json::parse(is);
    const int N = j.at("n").get<int>();
    const MatrixStructure s = structure_from_name(j.at("structure").get<std::string>());
    const auto& rows = j.at("entries");
    if (static_cast<int>(rows.size()) != N + 1)
        throw std::invalid_argument("read_matrix_json: row count does not match n");
    std::vector<Complex> entries;
    entries.reserve((static_cast<std::size_t>(N) + 1) * (static_cast<std::size_t>(N) + 1));
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != N + 1)
            throw std::invalid_argument("read_matrix_json: column count does not match n");
        for (const auto& cell : row) entries.emplace_back(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
    return OperatorMatrix(N, std::move(entries), s);
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void save_matrix(const std::string& path, const OperatorMatrix& m) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_matrix: cannot open " + path);
    if (ends_with(path, ".json"))
        write_matrix_json(os, m);
    else
        write_matrix_csv(os, m);
}

OperatorMatrix load_matrix(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_matrix: cannot open " + path);
    if (ends_with(path, ".json")) return read_matrix_json(is);
    return read_matrix_csv(is);
}

}  // namespace cesaro
