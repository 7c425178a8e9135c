#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hnls/data.hpp"
#include "hnls/norms.hpp"

namespace hnls {

/// Decimal text with 17 significant digits ("inf" for infinity).
std::string format_double(double v);

/// Field as CSV with columns x, t, re_u, im_u, x-major.
void write_field_csv(std::ostream& os, const Field& field);
/// Norm table as CSV with columns quantity, s, p, q, value; q is empty for
/// spatial norms.
void write_norms_csv(std::ostream& os, const std::vector<NormRow>& rows);

/// Sampled data: rows "coordinate,re[,im]" with an optional header line.
struct SampledColumn {
    std::vector<double> coordinate;
    std::vector<cplx> values;
};
SampledColumn read_samples_csv(const std::string& path);

/// Field from rows "x,t,re[,im]" covering a rectangular grid in any order.
Field read_field_csv(const std::string& path);

}  // namespace hnls
