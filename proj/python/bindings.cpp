#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "edgelab/algebraic.hpp"
#include "edgelab/calderon.hpp"
#include "edgelab/errors.hpp"
#include "edgelab/fredholm.hpp"
#include "edgelab/mesh.hpp"
#include "edgelab/report.hpp"
#include "edgelab/wspace.hpp"

namespace py = pybind11;
using namespace edgelab;

namespace {

std::vector<GradedMesh> as_vector(const std::vector<GradedMesh>& m) { return m; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "edge-symbol analysis, weighted spaces and a radial DtN harness";
    m.attr("__version__") = std::string(kToolVersion).substr(std::string(kToolVersion).find(' ') + 1);

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<InvalidArgument> invalid(m, "InvalidArgument", error.ptr());
    static py::exception<Unclassifiable> unclassifiable(m, "Unclassifiable", error.ptr());
    static py::exception<NotCertified> not_certified(m, "NotCertified", error.ptr());
    static py::exception<IoError> io_error(m, "IoError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InvalidArgument& e) {
            py::set_error(invalid, e.what());
        } catch (const Unclassifiable& e) {
            py::set_error(unclassifiable, e.what());
        } catch (const NotCertified& e) {
            py::set_error(not_certified, e.what());
        } catch (const IoError& e) {
            py::set_error(io_error, e.what());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    // mesh
    py::class_<GradedMesh>(m, "GradedMesh")
        .def_readonly("nodes", &GradedMesh::nodes)
        .def_readonly("quad_weights", &GradedMesh::quad_weights)
        .def_readonly("r_max", &GradedMesh::r_max)
        .def_readonly("grading_exponent", &GradedMesh::grading_exponent)
        .def_readonly("n_points", &GradedMesh::n_points)
        .def_readonly("level", &GradedMesh::level)
        .def_property_readonly("r_min", &GradedMesh::r_min)
        .def("max_spacing", &GradedMesh::max_spacing)
        .def("__len__", &GradedMesh::size);
    m.def("build_graded", &build_graded, py::arg("r_max"), py::arg("n_points"),
          py::arg("grading_exponent"), py::arg("level") = 0);
    m.def("integrate", [](const GradedMesh& mesh, const std::vector<double>& f) {
        return integrate(mesh, f);
    });
    m.def("refinement_sequence", [](const GradedMesh& base, int depth) {
        return as_vector(refinement_sequence(base, depth));
    });
    m.def("sample", [](const GradedMesh& mesh, const std::function<double(double)>& f) {
        return sample(mesh, f);
    });

    // wspace
    py::enum_<Verdict>(m, "Verdict")
        .value("member", Verdict::member)
        .value("divergent", Verdict::divergent)
        .value("borderline", Verdict::borderline);
    py::class_<WeightedSpace>(m, "WeightedSpace")
        .def(py::init<int, double, GradedMesh>(), py::arg("s"), py::arg("gamma"), py::arg("mesh"))
        .def_readonly("s", &WeightedSpace::s)
        .def_readonly("gamma", &WeightedSpace::gamma)
        .def_readonly("mesh", &WeightedSpace::mesh);
    py::class_<MembershipVerdict>(m, "MembershipVerdict")
        .def_readonly("verdict", &MembershipVerdict::verdict)
        .def_readonly("norm_trace", &MembershipVerdict::norm_trace)
        .def_readonly("fitted_rate", &MembershipVerdict::fitted_rate);
    m.def("weighted_norm", [](const WeightedSpace& s, const std::vector<double>& u) {
        return weighted_norm(s, u);
    });
    m.def("membership_test",
          [](const std::function<double(double)>& u, int s, double gamma,
             const std::vector<GradedMesh>& meshes) {
              return membership_test(u, s, gamma, meshes);
          },
          py::arg("u_rule"), py::arg("s"), py::arg("gamma"), py::arg("meshes"));
    m.def("gram_diagonal", [](const WeightedSpace& s) {
        return Eigen::VectorXd(gram_matrix(s).diagonal());
    });

    // edgesym
    py::class_<EdgeSymbolOperator>(m, "EdgeSymbolOperator")
        .def_readonly("matrix", &EdgeSymbolOperator::matrix)
        .def_readonly("gamma", &EdgeSymbolOperator::gamma)
        .def_readonly("xi_norm", &EdgeSymbolOperator::xi_norm)
        .def_readonly("sigma0", &EdgeSymbolOperator::sigma0)
        .def_readonly("order", &EdgeSymbolOperator::order)
        .def_readonly("mesh", &EdgeSymbolOperator::mesh)
        .def("mapping_spaces", &EdgeSymbolOperator::mapping_spaces)
        .def("apply", [](const EdgeSymbolOperator& op, const std::vector<double>& v) {
            return Eigen::VectorXd(op.apply(v));
        });
    m.def("assemble", &assemble, py::arg("gamma"), py::arg("xi_norm"), py::arg("sigma0"),
          py::arg("mesh"), py::arg("domain_order") = 2);
    m.def("adjoint", &adjoint);
    m.def("check_twisted_homogeneity", &check_twisted_homogeneity, py::arg("gamma"),
          py::arg("sigma0"), py::arg("lam"), py::arg("mesh"));

    // fredholm
    py::enum_<CaseLabel>(m, "CaseLabel")
        .value("Case1", CaseLabel::Case1)
        .value("Case2", CaseLabel::Case2)
        .value("Case3", CaseLabel::Case3)
        .value("Case4_nonFredholm", CaseLabel::Case4_nonFredholm);
    py::class_<FredholmReport>(m, "FredholmReport")
        .def_readonly("gamma", &FredholmReport::gamma)
        .def_readonly("kernel_dim", &FredholmReport::kernel_dim)
        .def_readonly("cokernel_dim", &FredholmReport::cokernel_dim)
        .def_readonly("smin_trace", &FredholmReport::smin_trace)
        .def_readonly("case_label", &FredholmReport::case_label)
        .def_readonly("mapping_spaces", &FredholmReport::mapping_spaces);
    m.def("analyze", [](const EdgeSymbolOperator& op, const std::vector<GradedMesh>& meshes) {
        return analyze(op, meshes);
    });
    m.def("bump", &bump);
    m.def("default_phi", &default_phi);
    py::enum_<BorderMode>(m, "BorderMode")
        .value("boundary_row", BorderMode::boundary_row)
        .value("coboundary_column", BorderMode::coboundary_column);
    py::class_<BorderedOperator>(m, "BorderedOperator")
        .def_readonly("mode", &BorderedOperator::mode)
        .def_readonly("matrix", &BorderedOperator::matrix)
        .def_readonly("core", &BorderedOperator::core);
    m.def("border",
          [](const EdgeSymbolOperator& op, BorderMode mode) {
              return border(op, std::function<double(double)>(bump), mode);
          },
          py::arg("op"), py::arg("mode"));
    py::class_<Certification>(m, "Certification")
        .def_readonly("certified", &Certification::certified)
        .def_readonly("gamma", &Certification::gamma)
        .def_readonly("smin_trace", &Certification::smin_trace)
        .def_readonly("mapping_spaces", &Certification::mapping_spaces);
    m.def("certify_invertible",
          [](const BorderedOperator& b, const std::vector<GradedMesh>& meshes) {
              return certify_invertible(b, meshes);
          });
    py::class_<BorderedSolution>(m, "BorderedSolution")
        .def_readonly("v", &BorderedSolution::v)
        .def_readonly("mu", &BorderedSolution::mu)
        .def_readonly("residual", &BorderedSolution::residual);
    m.def("solve_bordered",
          [](const BorderedOperator& b, const Certification& c, const std::vector<double>& F,
             double g) { return solve_bordered(b, c, F, g); });

    // calderon
    py::class_<ConductivityProfile>(m, "ConductivityProfile")
        .def_static("constant", &ConductivityProfile::constant)
        .def_static("two_layer", &ConductivityProfile::two_layer, py::arg("inner"),
                    py::arg("outer"), py::arg("interface"))
        .def_static("load", &ConductivityProfile::load)
        .def_static("from_json_text",
                    [](const std::string& s) {
                        return ConductivityProfile::from_json(nlohmann::json::parse(s));
                    })
        .def("__call__", &ConductivityProfile::operator())
        .def("to_json_text", [](const ConductivityProfile& p) { return p.to_json().dump(); });
    m.def("solve_mode",
          [](const ConductivityProfile& p, int n, int n_steps) {
              RadialMesh mesh;
              mesh.n_steps = n_steps;
              return solve_mode(p, n, mesh);
          },
          py::arg("profile"), py::arg("n"), py::arg("n_steps") = 4096);
    m.def("dtn_spectrum",
          [](const ConductivityProfile& p, int n_max, int n_steps) {
              RadialMesh mesh;
              mesh.n_steps = n_steps;
              return dtn_spectrum(p, n_max, mesh).modes;
          },
          py::arg("profile"), py::arg("n_max"), py::arg("n_steps") = 4096);
    m.def("compare_spectra",
          [](const std::vector<std::pair<int, double>>& a,
             const std::vector<std::pair<int, double>>& b) {
              const SpectrumComparison c = compare_spectra({a}, {b});
              return py::make_tuple(c.max_abs_dev, c.distinguishable);
          });

    // algebraic
    py::class_<SplitSequence>(m, "SplitSequence")
        .def_readonly("dim_J", &SplitSequence::dim_J)
        .def_readonly("dim_O", &SplitSequence::dim_O)
        .def_readonly("gram_J", &SplitSequence::gram_J)
        .def_readonly("gram_O", &SplitSequence::gram_O)
        .def_readonly("gram_A", &SplitSequence::gram_A);
    m.def("build_random_split", &build_random_split, py::arg("dim_J"), py::arg("dim_O"),
          py::arg("seed"), py::arg("gram_O") = std::optional<Eigen::MatrixXd>{});
    m.def("split_invariant_deviation", &split_invariant_deviation);
    m.def("random_isometry", &random_isometry);
    m.def("verify_split_isometry", [](const SplitSequence& a, const SplitSequence& b,
                                      const Eigen::MatrixXd& phi) {
        const SplitCheck c = verify_split_isometry(a, b, phi);
        return py::make_tuple(c.max_deviation, c.pass);
    });

    // report
    m.def("sha256_hex", [](const std::string& s) { return sha256_hex(s); });
    m.def("report_json", [](const FredholmReport& r) { return to_json_text(to_record(r)); });
}
