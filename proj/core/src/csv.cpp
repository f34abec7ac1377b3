#include "pairdiag/csv.hpp"

#include "pairdiag/errors.hpp"
#include "pairdiag/paired.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace pairdiag::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ValidationError("cannot parse number '" + s + "' at " + where);
    }
}

long long parse_ll(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ValidationError("cannot parse integer '" + s + "' at " + where);
    }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    return in;
}

} // namespace

InputKind detect_input_kind(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    std::string header;
    if (!std::getline(in, header)) throw ValidationError("empty file: " + path.string());
    auto fields = split_csv_line(header);
    for (auto& f : fields) f = strip(f);
    if (fields.size() >= 6 && fields[0] == "pair" && fields[1] == "N") return InputKind::Counts;
    if (!fields.empty() && fields[0] == "item_id") return InputKind::Matrix;
    throw ValidationError("unrecognized header in " + path.string() +
                          " (expected 'item_id,...' or 'pair,N,p_a,p_b,b,c[,rho]')");
}

ScoreMatrix parse_score_matrix(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty file: " + origin);
    auto header = split_csv_line(line);
    for (auto& f : header) f = strip(f);
    if (header.empty() || header[0] != "item_id")
        throw ValidationError(origin + ": first header column must be item_id");
    const bool has_cluster = header.size() >= 2 && header[1] == "cluster";
    const std::size_t first_model = has_cluster ? 2 : 1;
    if (header.size() <= first_model)
        throw ValidationError(origin + ": no model columns in header");

    ScoreMatrix m;
    std::unordered_set<std::string> model_seen;
    for (std::size_t c = first_model; c < header.size(); ++c) {
        if (header[c].empty())
            throw ValidationError(origin + ": empty model name in header column " +
                                  std::to_string(c + 1));
        if (!model_seen.insert(header[c]).second)
            throw ValidationError(origin + ": duplicate model name '" + header[c] + "'");
        m.model_names.push_back(header[c]);
    }
    m.scores.resize(m.model_names.size());

    std::unordered_set<std::string> item_seen;
    std::size_t row = 1;
    bool binary = true;
    while (std::getline(in, line)) {
        ++row;
        if (strip(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ValidationError(origin + ": row " + std::to_string(row) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(header.size()));
        const std::string item = strip(fields[0]);
        if (!item_seen.insert(item).second)
            throw ValidationError(origin + ": duplicate item_id '" + item + "' at row " +
                                  std::to_string(row));
        m.items.push_back(item);
        if (has_cluster) m.clusters.push_back(strip(fields[1]));
        for (std::size_t c = first_model; c < fields.size(); ++c) {
            const std::string where =
                origin + " row " + std::to_string(row) + ", column '" + header[c] + "'";
            const double v = parse_double(strip(fields[c]), where);
            if (!(v >= 0.0 && v <= 1.0))
                throw ValidationError("value " + std::to_string(v) + " outside [0,1] at " +
                                      where);
            binary = binary && (v == 0.0 || v == 1.0);
            m.scores[c - first_model].push_back(v);
        }
    }
    m.binary = binary;
    m.validate();
    return m;
}

ScoreMatrix load_score_matrix(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_score_matrix(in, path.string());
}

std::vector<CountsRow> parse_counts_fixture(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty file: " + origin);
    auto header = split_csv_line(line);
    for (auto& f : header) f = strip(f);
    const std::vector<std::string> expect = {"pair", "N", "p_a", "p_b", "b", "c"};
    if (header.size() < 6 || header.size() > 7 ||
        !std::equal(expect.begin(), expect.end(), header.begin()))
        throw ValidationError(origin + ": counts header must be pair,N,p_a,p_b,b,c[,rho]");
    const bool has_rho = header.size() == 7;
    if (has_rho && header[6] != "rho")
        throw ValidationError(origin + ": seventh column must be rho");

    std::vector<CountsRow> rows;
    std::size_t rowno = 1;
    while (std::getline(in, line)) {
        ++rowno;
        if (strip(line).empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw ValidationError(origin + ": row " + std::to_string(rowno) +
                                  " has wrong field count");
        const std::string where = origin + " row " + std::to_string(rowno);
        CountsRow r;
        r.pair_name = strip(f[0]);
        r.n = parse_ll(strip(f[1]), where);
        r.p_a = parse_double(strip(f[2]), where);
        r.p_b = parse_double(strip(f[3]), where);
        r.b = parse_ll(strip(f[4]), where);
        r.c = parse_ll(strip(f[5]), where);
        if (has_rho) r.rho_printed = parse_double(strip(f[6]), where);
        if (r.n < 1) throw ValidationError(where + ": N must be >= 1");
        if (r.b < 0 || r.c < 0 || r.b + r.c > r.n)
            throw ValidationError(where + ": counts must satisfy 0 <= b+c <= N");
        if (!(r.p_a >= 0.0 && r.p_a <= 1.0 && r.p_b >= 0.0 && r.p_b <= 1.0))
            throw ValidationError(where + ": marginals must lie in [0,1]");
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw ValidationError(origin + ": no data rows");
    return rows;
}

std::vector<CountsRow> load_counts_fixture(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_counts_fixture(in, path.string());
}

PairedSummary summary_from_counts(const CountsRow& row) {
    PairedSummary s;
    s.n = row.n;
    s.binary = true;
    s.n10 = row.b;
    s.n01 = row.c;
    // Reconstruct the full table from the marginal and the discordant cells,
    // then take the marginals back off the table so every identity
    // (delta = (b-c)/n = p_a - p_b, sigma^2 = psi - delta^2) holds exactly
    // despite the input marginals being printed at few decimals.
    s.n11 = std::llround(row.p_a * static_cast<double>(row.n)) - row.b;
    s.n00 = row.n - s.n11 - s.n10 - s.n01;
    if (s.n11 < 0 || s.n00 < 0)
        throw ValidationError("counts row '" + row.pair_name +
                              "': marginals inconsistent with counts");
    const double n = static_cast<double>(row.n);
    s.p_a = static_cast<double>(s.n11 + s.n10) / n;
    s.p_b = static_cast<double>(s.n11 + s.n01) / n;
    const double psi = static_cast<double>(row.b + row.c) / n;
    s.delta_hat = static_cast<double>(row.b - row.c) / n;
    s.sigma_d_hat = std::sqrt(std::max(0.0, psi - s.delta_hat * s.delta_hat));
    // rho from the variance identity at the reconciled marginals; fall back
    // to the printed value at boundary marginals.
    const double va = s.p_a * (1.0 - s.p_a), vb = s.p_b * (1.0 - s.p_b);
    if (va > 0.0 && vb > 0.0) {
        const double sigma2 = s.sigma_d_hat * s.sigma_d_hat;
        s.rho_hat = std::clamp((va + vb - sigma2) / (2.0 * std::sqrt(va * vb)), -1.0, 1.0);
    } else {
        s.rho_hat = row.rho_printed.value_or(0.0);
    }
    return s;
}

std::string matrix_to_csv(const ScoreMatrix& m) {
    std::ostringstream os;
    os.precision(10);
    os << "item_id";
    if (m.has_clusters()) os << ",cluster";
    for (const auto& name : m.model_names) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < m.n_items(); ++i) {
        os << m.items[i];
        if (m.has_clusters()) os << ',' << m.clusters[i];
        for (const auto& col : m.scores) os << ',' << col[i];
        os << '\n';
    }
    return os.str();
}

} // namespace pairdiag::io
