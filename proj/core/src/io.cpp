#include "mfrac/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mfrac/errors.hpp"

namespace mfrac {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open output file: " + path);
    return out;
}

const char* family_name(OracleFamily f) {
    switch (f) {
        case OracleFamily::power: return "power";
        case OracleFamily::log_k: return "log_k";
        case OracleFamily::exp: return "exp";
        case OracleFamily::sinc: return "sinc";
        case OracleFamily::sinc_deriv: return "sinc_deriv";
    }
    return "?";
}

}  // namespace

void write_function_csv(const std::string& path, const LogGrid& grid,
                        const std::vector<cplx>& values) {
    if (values.size() != grid.size()) throw DomainError("write_function_csv: size mismatch");
    auto out = open_out(path);
    out << "x,re,im\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << format_g17(grid[i]) << ',' << format_g17(values[i].real()) << ','
            << format_g17(values[i].imag()) << '\n';
    }
}

void write_spectrum_csv(const std::string& path, const MellinSpectrum& spec) {
    auto out = open_out(path);
    out << "t,re,im\n";
    for (std::size_t i = 0; i < spec.t_values.size(); ++i) {
        out << format_g17(spec.t_values[i]) << ',' << format_g17(spec.values[i].real()) << ','
            << format_g17(spec.values[i].imag()) << '\n';
    }
}

void write_field_csv(const std::string& path, const PdeSolution& sol) {
    auto out = open_out(path);
    out << "x,y,w\n";
    for (std::size_t j = 0; j < sol.y_values.size(); ++j) {
        for (std::size_t i = 0; i < sol.x_grid.size(); ++i) {
            out << format_g17(sol.x_grid[i]) << ',' << format_g17(sol.y_values[j]) << ','
                << format_g17(sol.w[j][i].real()) << '\n';
        }
    }
}

MellinFunction read_function_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open input file: " + path);
    std::string line;
    std::vector<double> xs;
    std::vector<cplx> vals;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.find_first_not_of("0123456789+-.eE, \t") != std::string::npos) {
            first = false;
            continue;  // header
        }
        first = false;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() < 2) throw DomainError("read_function_csv: need at least x,re columns");
        xs.push_back(row[0]);
        vals.emplace_back(row[1], row.size() > 2 ? row[2] : 0.0);
    }
    if (xs.size() < 2) throw DomainError("read_function_csv: need at least two samples");
    double h = std::log(xs[1] / xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (std::abs(std::log(xs[i] / xs[i - 1]) - h) > 1e-9 * std::abs(h)) {
            throw DomainError("read_function_csv: x column must be log-uniform");
        }
    }
    LogGrid grid(xs.front(), xs.back(), xs.size());
    return MellinFunction::from_samples(std::move(grid), std::move(vals));
}

std::string strong_report_json(const StrongDerivativeReport& report) {
    nlohmann::ordered_json j;
    j["h"] = report.h_values;
    j["estimate_norm"] = report.estimate_norm;
    j["successive_diff"] = report.successive_diff;
    j["imag_residual"] = report.imag_residual;
    j["monotone"] = report.monotone;
    return j.dump(2);
}

std::string oracle_case_csv_row(const OracleCase& oc, cplx value) {
    std::ostringstream out;
    out << family_name(oc.family) << ',' << (oc.op == OracleOp::integral ? 'J' : 'D') << ','
        << format_g17(oc.alpha) << ',' << format_g17(oc.c) << ',' << format_g17(oc.b) << ','
        << oc.k << ',' << format_g17(oc.x) << ',' << format_g17(value.real()) << ','
        << format_g17(value.imag());
    return out.str();
}

void write_oracle_fixture(const std::string& path,
                          const std::vector<std::pair<OracleCase, cplx>>& cases) {
    auto out = open_out(path);
    out << "family,op,alpha,c,b,k,x,re,im\n";
    for (const auto& [oc, value] : cases) out << oracle_case_csv_row(oc, value) << '\n';
}

}  // namespace mfrac
