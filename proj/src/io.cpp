#include "hnls/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "hnls/errors.hpp"

namespace hnls {

namespace {

std::vector<std::vector<double>> read_numeric_rows(const std::string& path, std::size_t min_cols) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open data file " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        const bool numeric = ss.eof();
        if (!numeric) {
            if (first) {
                first = false;
                continue;  // header line
            }
            throw ConfigInvalid("non-numeric row in " + path + ": " + line);
        }
        first = false;
        if (row.size() < min_cols) throw ConfigInvalid("too few columns in " + path);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_csv(std::ostream& os, const Field& field) {
    os << "x,t,re_u,im_u\n";
    for (std::size_t i = 0; i < field.nx(); ++i) {
        for (std::size_t j = 0; j < field.nt(); ++j) {
            const cplx v = field(i, j);
            os << format_double(field.x[i]) << ',' << format_double(field.t[j]) << ',' << format_double(v.real())
               << ',' << format_double(v.imag()) << '\n';
        }
    }
}

void write_norms_csv(std::ostream& os, const std::vector<NormRow>& rows) {
    os << "quantity,s,p,q,value\n";
    for (const NormRow& r : rows) {
        os << r.quantity << ',' << format_double(r.s) << ',' << format_double(r.p) << ',' << (std::isnan(r.q) ? std::string() : format_double(r.q)) << ','
           << format_double(r.value) << '\n';
    }
}

SampledColumn read_samples_csv(const std::string& path) {
    SampledColumn out;
    for (const auto& row : read_numeric_rows(path, 2)) {
        out.coordinate.push_back(row[0]);
        out.values.emplace_back(row[1], row.size() > 2 ? row[2] : 0.0);
    }
    if (out.values.size() < 4) throw ConfigInvalid("data file " + path + " needs at least 4 rows");
    return out;
}

Field read_field_csv(const std::string& path) {
    std::map<std::pair<double, double>, cplx> pts;
    std::vector<double> xs, ts;
    for (const auto& row : read_numeric_rows(path, 3)) {
        xs.push_back(row[0]);
        ts.push_back(row[1]);
        pts[{row[0], row[1]}] = cplx(row[2], row.size() > 3 ? row[3] : 0.0);
    }
    for (auto* v : {&xs, &ts}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    if (pts.size() != xs.size() * ts.size()) throw ConfigInvalid("field file " + path + " is not a full rectangular grid");
    Field f(xs, ts);
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j) f(i, j) = pts.at({xs[i], ts[j]});
    f.validate();
    return f;
}

}  // namespace hnls
