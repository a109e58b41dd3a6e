#include "corrbern/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "corrbern/balance.hpp"

namespace corrbern {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw format_error(line, "not a number: '" + s + "'");
    }
}

std::size_t parse_index(const std::string& s, std::size_t line) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw format_error(line, "not a non-negative integer: '" + s + "'");
    return static_cast<std::size_t>(std::stoull(s));
}

} // namespace

std::string format_sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_samples(std::ostream& out, const std::vector<GraphPair>& samples) {
    out << "sample_id,x_bits,y_bits\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        out << i << ',' << samples[i].x_string() << ',' << samples[i].y_string() << '\n';
}

std::vector<GraphPair> read_samples(std::istream& in) {
    std::vector<GraphPair> samples;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw format_error(1, "missing header");
    ++line_no;
    strip_cr(line);
    if (line != "sample_id,x_bits,y_bits") throw format_error(line_no, "expected header sample_id,x_bits,y_bits");
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 3) throw format_error(line_no, "expected 3 columns, found " + std::to_string(cells.size()));
        parse_index(cells[0], line_no);
        if (cells[1].size() != cells[2].size() || cells[1].empty())
            throw format_error(line_no, "x_bits and y_bits must be non-empty and of equal length");
        if (!samples.empty() && cells[1].size() != samples.front().size())
            throw format_error(line_no, "bit-string length differs from earlier rows");
        try {
            samples.push_back(GraphPair::from_strings(cells[1], cells[2]));
        } catch (const std::invalid_argument& e) {
            throw format_error(line_no, e.what());
        }
    }
    return samples;
}

std::vector<GraphPair> draw_samples(const ModelParams& params, std::size_t count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<GraphPair> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) samples.push_back(sample_pair(params, rng));
    return samples;
}

EstimateRow estimate(const GraphPair& point, double convention) {
    const auto d = densities(point);
    EstimateRow r;
    r.delta = delta_stat(point);
    r.dx = d.dx;
    r.dy = d.dy;
    r.dxy = d.dxy;
    r.dcap = d.dcap;
    r.str = alignment_strength(point, convention);
    r.str_bar = balanced_alignment_strength(point, convention);
    r.str_prime = modified_alignment_strength(point, convention);
    return r;
}

void write_estimates(std::ostream& out, const std::vector<GraphPair>& samples, double convention) {
    out << "sample_id,delta,dX,dY,dXY,dCap,str,str_bar,str_prime\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto e = estimate(samples[i], convention);
        out << i << ',' << e.delta << ',' << format_sig6(e.dx) << ',' << format_sig6(e.dy) << ','
            << format_sig6(e.dxy) << ',' << format_sig6(e.dcap) << ',' << format_sig6(e.str) << ','
            << format_sig6(e.str_bar) << ',' << format_sig6(e.str_prime) << '\n';
    }
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    const std::size_t n = rows.empty() ? 0 : rows.front().params.size();
    out << "replicate";
    for (std::size_t i = 1; i <= n; ++i) out << ",p_" << i;
    for (std::size_t i = 1; i <= n; ++i) out << ",rho_" << i;
    out << ",E_str,E_strprime,rho_T,Var_str,Var_strbar,Var_strprime,MSE_strbar,MSE_strprime\n";
    for (const auto& r : rows) {
        out << r.replicate_index;
        for (double v : r.params.p()) out << ',' << format_sig6(v);
        for (double v : r.params.rho()) out << ',' << format_sig6(v);
        for (double v : {r.e_str, r.e_strprime, r.rho_t, r.var_str, r.var_strbar, r.var_strprime, r.mse_strbar,
                         r.mse_strprime})
            out << ',' << format_sig6(v);
        out << '\n';
    }
}

std::vector<ExperimentRow> read_experiment_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw format_error(1, "missing header");
    strip_cr(line);
    const auto header = split_csv(line);
    if (header.size() < 12 || header.front() != "replicate" || (header.size() - 9) % 2 != 0)
        throw format_error(1, "unrecognised experiment header");
    const std::size_t n = (header.size() - 9) / 2;

    std::vector<ExperimentRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw format_error(line_no, "expected " + std::to_string(header.size()) + " columns, found " +
                                            std::to_string(cells.size()));
        std::vector<double> p(n), rho(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = parse_double(cells[1 + i], line_no);
            rho[i] = parse_double(cells[1 + n + i], line_no);
        }
        ExperimentRow r;
        r.replicate_index = parse_index(cells[0], line_no);
        try {
            r.params = ModelParams(std::move(p), std::move(rho));
        } catch (const std::exception& e) {
            throw format_error(line_no, e.what());
        }
        const std::size_t base = 1 + 2 * n;
        double* fields[] = {&r.e_str, &r.e_strprime, &r.rho_t, &r.var_str, &r.var_strbar, &r.var_strprime,
                            &r.mse_strbar, &r.mse_strprime};
        for (std::size_t k = 0; k < 8; ++k) *fields[k] = parse_double(cells[base + k], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    char buf[32];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
            out << (c ? "," : "") << buf;
        }
        out << '\n';
    }
}

std::vector<ModelParams> params_list_from_json(const nlohmann::json& j) {
    std::vector<ModelParams> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(ModelParams::from_json(item));
    } else {
        out.push_back(ModelParams::from_json(j));
    }
    if (out.empty()) throw std::invalid_argument("params file holds no parameter rows");
    for (const auto& p : out)
        if (p.size() != out.front().size()) throw std::invalid_argument("all parameter rows must have the same N");
    return out;
}

std::vector<ModelParams> load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read params file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("params file '" + path + "' is not valid JSON: " + e.what());
    }
    return params_list_from_json(j);
}

} // namespace corrbern
