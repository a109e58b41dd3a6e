#ifndef CORRBERN_IO_HPP
#define CORRBERN_IO_HPP

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "corrbern/experiment.hpp"
#include "corrbern/linsys.hpp"
#include "corrbern/model.hpp"

namespace corrbern {

/// Malformed CSV input; `line()` is 1-based and counts the header.
class format_error : public std::runtime_error {
public:
    format_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Six significant digits, printf %.6g.
std::string format_sig6(double v);

/// CSV with header `sample_id,x_bits,y_bits`; bits are 0/1 strings, component 0 first.
void write_samples(std::ostream& out, const std::vector<GraphPair>& samples);
std::vector<GraphPair> read_samples(std::istream& in);

std::vector<GraphPair> draw_samples(const ModelParams& params, std::size_t count, std::uint64_t seed);

struct EstimateRow {
    std::size_t delta = 0;
    double dx = 0.0;
    double dy = 0.0;
    double dxy = 0.0;
    double dcap = 0.0;
    double str = 0.0;
    double str_bar = 0.0;
    double str_prime = 0.0;
};

EstimateRow estimate(const GraphPair& point, double convention = kDegenerateConvention);

/// CSV with header `sample_id,delta,dX,dY,dXY,dCap,str,str_bar,str_prime`.
void write_estimates(std::ostream& out, const std::vector<GraphPair>& samples,
                     double convention = kDegenerateConvention);

/// CSV with header `replicate,p_1..p_N,rho_1..rho_N,E_str,E_strprime,rho_T,
/// Var_str,Var_strbar,Var_strprime,MSE_strbar,MSE_strprime`.
void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> read_experiment_csv(std::istream& in);

/// Dense matrix or vector, one row per line, full precision (%.17g).
void write_matrix_csv(std::ostream& out, const Matrix& m);

/// A single {"p","rho"} object or an array of them.
std::vector<ModelParams> params_list_from_json(const nlohmann::json& j);
std::vector<ModelParams> load_params_file(const std::string& path);

} // namespace corrbern

#endif
