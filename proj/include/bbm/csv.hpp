#pragma once

#include "bbm/kernels.hpp"
#include "bbm/periodicity.hpp"
#include "bbm/solver.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace bbm {

/// CSV writers: comma separator, '.' decimal, header row, locale-free,
/// full double precision so identical runs are bit-identical.

void write_kernel_field_csv(std::ostream& os, const KernelField& kf);
void write_solution_field_csv(std::ostream& os, const SolutionField& field);
void write_periodicity_csv(std::ostream& os, const PeriodicityReport& rep);

struct AsymptoticsRow {
    std::string segment;
    double alpha, gamma, x, t;
    cplx exact, approx;
    double rel_err;
};
void write_asymptotics_csv(std::ostream& os, const std::vector<AsymptoticsRow>& rows);

void write_file(const std::string& path, const std::string& content);

} // namespace bbm
