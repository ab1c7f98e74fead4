#include "bbm/csv.hpp"
#include "bbm/errors.hpp"

#include <fstream>
#include <locale>

namespace bbm {

namespace {

void prepare(std::ostream& os) {
    os.imbue(std::locale::classic());
    os.precision(17);
}

} // namespace

void write_kernel_field_csv(std::ostream& os, const KernelField& kf) {
    prepare(os);
    os << "x,t,phi\n";
    for (Eigen::Index i = 0; i < kf.grid.x.size(); ++i)
        for (Eigen::Index j = 0; j < kf.grid.t.size(); ++j)
            os << kf.grid.x[i] << "," << kf.grid.t[j] << "," << kf.phi_values(i, j) << "\n";
}

void write_solution_field_csv(std::ostream& os, const SolutionField& field) {
    prepare(os);
    os << "x,t,u,method\n";
    const std::string m = method_name(field.method);
    for (Eigen::Index i = 0; i < field.grid.x.size(); ++i)
        for (Eigen::Index j = 0; j < field.grid.t.size(); ++j)
            os << field.grid.x[i] << "," << field.grid.t[j] << "," << field.u(i, j) << ","
               << m << "\n";
}

void write_periodicity_csv(std::ostream& os, const PeriodicityReport& rep) {
    prepare(os);
    os << "x,t,defect_direct,defect_envelope,defect_repr,slope\n";
    for (Eigen::Index i = 0; i < rep.t_samples.size(); ++i)
        os << rep.x << "," << rep.t_samples[i] << "," << rep.defect[i] << ","
           << rep.defect_envelope[i] << "," << rep.defect_repr[i] << "," << rep.fit.slope
           << "\n";
}

void write_asymptotics_csv(std::ostream& os, const std::vector<AsymptoticsRow>& rows) {
    prepare(os);
    os << "segment,alpha,gamma,x,t,re_exact,im_exact,re_approx,im_approx,rel_err\n";
    for (const auto& r : rows)
        os << r.segment << "," << r.alpha << "," << r.gamma << "," << r.x << "," << r.t
           << "," << r.exact.real() << "," << r.exact.imag() << "," << r.approx.real()
           << "," << r.approx.imag() << "," << r.rel_err << "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RangeError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw RangeError("failed writing '" + path + "'");
}

} // namespace bbm
