#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "confocal/confocal.hpp"

namespace {

using confocal::Vec;

/// Minimal ordered JSON value with fixed numeric formatting (17 significant
/// digits), so identical inputs always produce identical bytes.
class JVal {
  public:
    JVal() : kind_(Kind::Object) {}

    static JVal number(double v) {
        JVal j;
        j.kind_ = Kind::Literal;
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        j.literal_ = buf;
        return j;
    }
    static JVal integer(long long v) {
        JVal j;
        j.kind_ = Kind::Literal;
        j.literal_ = std::to_string(v);
        return j;
    }
    static JVal string(const std::string& s) {
        JVal j;
        j.kind_ = Kind::Literal;
        j.literal_ = quote(s);
        return j;
    }
    static JVal array() {
        JVal j;
        j.kind_ = Kind::Array;
        return j;
    }
    static JVal numbers(const Vec& v) {
        JVal j = array();
        for (double x : v) j.push(number(x));
        return j;
    }
    template <class T> static JVal integers(const T& v) {
        JVal j = array();
        for (auto x : v) j.push(integer(x));
        return j;
    }

    JVal& set(const std::string& key, JVal v) {
        fields_.emplace_back(key, std::move(v));
        return *this;
    }
    JVal& push(JVal v) {
        items_.push_back(std::move(v));
        return *this;
    }

    std::string dump() const {
        std::string out;
        write(out, 0);
        out.push_back('\n');
        return out;
    }

  private:
    enum class Kind { Literal, Array, Object };

    static std::string quote(const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
            }
        }
        out.push_back('"');
        return out;
    }

    void write(std::string& out, int depth) const {
        std::string pad(2 * (depth + 1), ' ');
        std::string close_pad(2 * depth, ' ');
        switch (kind_) {
        case Kind::Literal: out += literal_; break;
        case Kind::Array:
            if (items_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += pad;
                items_[i].write(out, depth + 1);
                out += i + 1 < items_.size() ? ",\n" : "\n";
            }
            out += close_pad + "]";
            break;
        case Kind::Object:
            if (fields_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < fields_.size(); ++i) {
                out += pad + quote(fields_[i].first) + ": ";
                fields_[i].second.write(out, depth + 1);
                out += i + 1 < fields_.size() ? ",\n" : "\n";
            }
            out += close_pad + "}";
            break;
        }
    }

    Kind kind_ = Kind::Object;
    std::string literal_;
    std::vector<JVal> items_;
    std::vector<std::pair<std::string, JVal>> fields_;
};

std::string format_g9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

int emit(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << output_path << "\n";
        return 1;
    }
    out << payload;
    return 0;
}

int emit_error(const confocal::Error& e) {
    std::string kind = confocal::error_kind_name(e.kind());
    std::string message = e.what();
    if (message.rfind(kind + ": ", 0) == 0) message = message.substr(kind.size() + 2);
    JVal err;
    err.set("kind", JVal::string(kind));
    err.set("message", JVal::string(message));
    JVal root;
    root.set("schema", JVal::string("error.v1"));
    root.set("error", std::move(err));
    std::cout << root.dump();
    return 2;
}

Vec axes_from_flags(const Vec& axes, const Vec& lengths) {
    if (!axes.empty() && !lengths.empty())
        throw CLI::ValidationError("--axes and --lengths are mutually exclusive");
    if (!axes.empty()) return axes;
    if (lengths.empty()) throw CLI::ValidationError("one of --axes or --lengths is required");
    Vec sq(lengths);
    for (double& v : sq) v = v * v;
    return sq;
}

struct EllipticArgs {
    Vec axes, lengths, point;
    double nudge = 0.0;
    double tol = 1e-8;
    std::string output;
};

int cmd_elliptic(const EllipticArgs& a) {
    confocal::ConfocalSystem sys(axes_from_flags(a.axes, a.lengths));
    Vec x = a.point;
    if (static_cast<int>(x.size()) != sys.dim())
        throw confocal::Error(confocal::ErrorKind::DimensionMismatch,
                              "point dimension differs from the axis count");
    double a1 = std::sqrt(sys.a1_sq());
    if (a.nudge > 0)
        for (double& xi : x)
            if (std::fabs(xi) < a.nudge * a1) xi = (xi < 0 ? -1.0 : 1.0) * a.nudge * a1;

    confocal::EllipticCoordinates ec = confocal::elliptic_coordinates(sys, x, a.tol);
    confocal::AxesTable table = confocal::axes_table(sys, ec);
    confocal::NormCheck nc = confocal::norm_identity_check(sys, ec);

    JVal table_json = JVal::array();
    for (const Vec& row : table.entries) table_json.push(JVal::numbers(row));
    JVal norm;
    norm.set("lhs", JVal::number(nc.norm_sq));
    norm.set("rhs", JVal::number(nc.diag_sum));
    norm.set("diff", JVal::number(nc.norm_sq - nc.diag_sum));

    JVal root;
    root.set("schema", JVal::string("elliptic-report.v1"));
    root.set("base_sq_axes", JVal::numbers(sys.base_sq_axes));
    root.set("point", JVal::numbers(x));
    root.set("lambdas", JVal::numbers(ec.lambdas));
    root.set("axes_table", std::move(table_json));
    root.set("norm_check", std::move(norm));
    return emit(root.dump(), a.output);
}

struct StaudeArgs {
    Vec axes, lengths, point;
    bool project = false;
    int samples = 0;
    unsigned long long seed = 0;
    double tol = 1e-10;
    std::string output;
};

int cmd_staude(const StaudeArgs& a) {
    Vec sq = axes_from_flags(a.axes, a.lengths);
    if (sq.size() != 3) throw CLI::ValidationError("the staude command is three-dimensional");
    confocal::FocalConics fc(std::sqrt(sq[0]), std::sqrt(sq[1]), std::sqrt(sq[2]));
    confocal::ConfocalSystem sys = fc.system();
    if (a.point.empty() && a.samples <= 0)
        throw CLI::ValidationError("provide --point and/or --samples");

    JVal root;
    root.set("schema", JVal::string("staude-report.v1"));
    root.set("lengths", JVal::numbers({fc.a, fc.b, fc.c}));
    root.set("closed_form",
             JVal::number(2.0 * fc.a + std::sqrt(fc.ae_sq()) - std::sqrt(fc.ah_sq())));

    if (!a.point.empty()) {
        Vec x = a.point;
        if (x.size() != 3)
            throw confocal::Error(confocal::ErrorKind::DimensionMismatch,
                                  "point must be three-dimensional");
        confocal::CentralQuadric base(sys.base_sq_axes);
        double miss = confocal::evaluate(base, x);
        if (a.project && std::fabs(miss) > a.tol) {
            double s = 0;
            for (int i = 0; i < 3; ++i) s += x[i] * x[i] / sys.base_sq_axes[i];
            x = confocal::scale(x, 1.0 / std::sqrt(s));
            root.set("warning", JVal::string("point projected onto the ellipsoid"));
        }
        confocal::StaudeLength sl = confocal::staude_length(fc, x, a.tol);
        std::vector<confocal::FocalRadius> radii = confocal::focal_radii(fc, x);

        root.set("point", JVal::numbers(x));
        root.set("assembled", JVal::number(sl.assembled));
        JVal legs;
        legs.set("PE", JVal::number(sl.leg_pe));
        legs.set("EG2", JVal::number(sl.leg_eg2));
        legs.set("PH", JVal::number(sl.leg_ph));
        legs.set("HF1", JVal::number(sl.leg_hf1));
        root.set("per_leg", std::move(legs));
        root.set("hyperbola_branch", JVal::integer(sl.hyperbola_branch));
        JVal radii_json = JVal::array();
        for (const confocal::FocalRadius& r : radii) {
            JVal rj;
            rj.set("sign_profile", JVal::integers(r.sign_profile));
            rj.set("direction", JVal::numbers(r.direction));
            rj.set("t", JVal::number(r.t));
            rj.set("tau", JVal::number(r.tau));
            rj.set("ellipse_point", JVal::numbers(r.ellipse_point));
            rj.set("hyperbola_point", JVal::numbers(r.hyperbola_point));
            radii_json.push(std::move(rj));
        }
        root.set("radii", std::move(radii_json));
    }

    if (a.samples > 0) {
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < a.samples; ++i) {
            confocal::Rng rng = confocal::Rng::for_case(a.seed, i);
            Vec p = confocal::sample_surface_point(sys, rng);
            double len = confocal::staude_length(fc, p, 1e-9).assembled;
            lo = std::min(lo, len);
            hi = std::max(hi, len);
        }
        JVal sweep;
        sweep.set("samples", JVal::integer(a.samples));
        sweep.set("min_assembled", JVal::number(lo));
        sweep.set("max_assembled", JVal::number(hi));
        sweep.set("max_spread", JVal::number(hi - lo));
        root.set("sweep", std::move(sweep));
    }
    return emit(root.dump(), a.output);
}

struct VerifyArgs {
    unsigned long long seed = 0;
    int max_dim = 6;
    int cases = 24;
    std::vector<std::string> only;
    bool self_test_fail = false;
    std::string output;
};

int cmd_verify(const VerifyArgs& a) {
    confocal::VerifyOptions opt;
    opt.seed = a.seed;
    opt.max_dim = a.max_dim;
    opt.cases_per_dim = a.cases;
    opt.only = a.only;
    opt.self_test_fail = a.self_test_fail;
    for (const std::string& name : a.only) {
        auto names = confocal::verify_suite_names();
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw CLI::ValidationError("unknown suite: " + name);
    }
    std::vector<confocal::SuiteResult> results = confocal::run_verify(opt);

    int total = 0;
    JVal suites = JVal::array();
    for (const confocal::SuiteResult& s : results) {
        total += s.failures;
        JVal sj;
        sj.set("suite", JVal::string(s.name));
        sj.set("cases", JVal::integer(s.cases));
        sj.set("failures", JVal::integer(s.failures));
        sj.set("worst_residual", JVal::number(s.worst_residual));
        suites.push(std::move(sj));
    }
    JVal root;
    root.set("schema", JVal::string("verify-report.v1"));
    root.set("seed", JVal::integer(static_cast<long long>(a.seed)));
    root.set("max_dim", JVal::integer(a.max_dim));
    root.set("suites", std::move(suites));
    root.set("failures_total", JVal::integer(total));
    int rc = emit(root.dump(), a.output);
    if (rc != 0) return rc;
    return total == 0 ? 0 : 3;
}

struct MeshArgs {
    Vec axes, lengths, point, u;
    Vec surfaces;
    bool focal_conics = false;
    bool apollonian = false;
    bool edges = false;
    int samples = 0;
    unsigned long long seed = 0;
    double tau_min = 0.0, tau_max = -1.0;
    std::string format = "obj";
    std::string output;
};

class ObjBuilder {
  public:
    void object(const std::string& name) { body_ += "o " + name + "\n"; }
    int vertex(const Vec& x) {
        body_ += "v";
        for (double v : x) body_ += " " + format_g9(v);
        body_ += "\n";
        return ++count_;
    }
    void face(int a, int b, int c, int d) {
        body_ += "f " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) +
                 " " + std::to_string(d) + "\n";
    }
    void line(const std::vector<int>& idx) {
        body_ += "l";
        for (int i : idx) body_ += " " + std::to_string(i);
        body_ += "\n";
    }
    std::string take() { return body_; }

  private:
    std::string body_;
    int count_ = 0;
};

void mesh_surface_obj(ObjBuilder& obj, const confocal::CentralQuadric& q, double lambda,
                      int rows, int cols) {
    const Vec& s = q.signed_sq_axes;
    int neg = 0;
    for (double v : s) neg += v < 0 ? 1 : 0;
    char tag[64];
    std::snprintf(tag, sizeof tag, "surface_lambda_%.9g", lambda);
    const double pi = std::acos(-1.0);

    auto grid = [&](auto&& param, const std::string& name, double u0, double u1, bool wrap_v) {
        obj.object(name);
        std::vector<std::vector<int>> idx(rows + 1, std::vector<int>(cols));
        for (int i = 0; i <= rows; ++i)
            for (int j = 0; j < cols; ++j) {
                double uu = u0 + (u1 - u0) * i / rows;
                double vv = 2.0 * pi * j / cols;
                idx[i][j] = obj.vertex(param(uu, vv));
            }
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                int jn = (j + 1) % cols;
                if (!wrap_v && jn == 0) continue;
                obj.face(idx[i][j], idx[i + 1][j], idx[i + 1][jn], idx[i][jn]);
            }
    };

    if (neg == 0) {
        grid(
            [&](double th, double ph) {
                return Vec{std::sqrt(s[0]) * std::sin(th) * std::cos(ph),
                           std::sqrt(s[1]) * std::sin(th) * std::sin(ph),
                           std::sqrt(s[2]) * std::cos(th)};
            },
            tag, 0.06 * pi, 0.94 * pi, true);
    } else if (neg == 1) {
        grid(
            [&](double eta, double ph) {
                return Vec{std::sqrt(s[0]) * std::cosh(eta) * std::cos(ph),
                           std::sqrt(s[1]) * std::cosh(eta) * std::sin(ph),
                           std::sqrt(-s[2]) * std::sinh(eta)};
            },
            tag, -1.4, 1.4, true);
    } else if (neg == 2) {
        for (int sheet = -1; sheet <= 1; sheet += 2) {
            std::string name = std::string(tag) + (sheet > 0 ? "_plus" : "_minus");
            grid(
                [&](double eta, double ph) {
                    return Vec{sheet * std::sqrt(s[0]) * std::cosh(eta),
                               std::sqrt(-s[1]) * std::sinh(eta) * std::cos(ph),
                               std::sqrt(-s[2]) * std::sinh(eta) * std::sin(ph)};
                },
                name, 0.02, 1.4, true);
        }
    } else {
        throw confocal::Error(confocal::ErrorKind::InvalidInput,
                              "no real surface for this parameter");
    }
}

int cmd_mesh(const MeshArgs& a) {
    confocal::ConfocalSystem sys(axes_from_flags(a.axes, a.lengths));
    int n = sys.dim();
    bool any = !a.surfaces.empty() || a.focal_conics || a.apollonian || a.edges;
    if (!any) throw CLI::ValidationError("nothing to export; pass --surfaces/--focal-conics/--apollonian/--edges");
    if (a.format != "obj" && a.format != "csv") throw CLI::ValidationError("format must be obj or csv");

    if (a.format == "obj") {
        if (n != 3) {
            std::cerr << "OBJ export requires a three-dimensional system\n";
            return 1;
        }
        if (a.apollonian) {
            std::cerr << "the Apollonian curve exports as CSV only\n";
            return 1;
        }
        ObjBuilder obj;
        int rows = a.samples > 0 ? a.samples : 24;
        for (double lam : a.surfaces)
            mesh_surface_obj(obj, confocal::confocal_quadric(sys, lam), lam, rows, rows);
        if (a.focal_conics) {
            confocal::FocalConics fc(std::sqrt(sys.base_sq_axes[0]),
                                     std::sqrt(sys.base_sq_axes[1]),
                                     std::sqrt(sys.base_sq_axes[2]));
            int m = a.samples > 0 ? a.samples : 96;
            obj.object("focal_ellipse");
            std::vector<int> loop;
            for (int i = 0; i < m; ++i)
                loop.push_back(obj.vertex(fc.ellipse_point(2.0 * std::acos(-1.0) * i / m)));
            loop.push_back(loop.front());
            obj.line(loop);
            for (int branch = -1; branch <= 1; branch += 2) {
                obj.object(branch > 0 ? "focal_hyperbola_plus" : "focal_hyperbola_minus");
                std::vector<int> arc;
                for (int i = 0; i <= m; ++i)
                    arc.push_back(obj.vertex(fc.hyperbola_point(-2.0 + 4.0 * i / m, branch)));
                obj.line(arc);
            }
        }
        if (a.edges) {
            if (a.point.empty()) throw CLI::ValidationError("--edges needs --point");
            std::vector<confocal::Cone> cones;
            for (int k = 2; k <= n; ++k) cones.push_back(confocal::focal_cone(sys, a.point, k));
            std::vector<confocal::Transversal> edges = confocal::common_edges(cones);
            double reach = std::sqrt(sys.a1_sq());
            for (std::size_t e = 0; e < edges.size(); ++e) {
                obj.object("common_edge_" + std::to_string(e + 1));
                Vec d = confocal::frame_apply(cones[0].frame, edges[e].direction);
                int v1 = obj.vertex(confocal::axpy(cones[0].apex, -reach, d));
                int v2 = obj.vertex(confocal::axpy(cones[0].apex, reach, d));
                obj.line({v1, v2});
            }
        }
        return emit(obj.take(), a.output);
    }

    // CSV point clouds and curves.
    std::string csv;
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    if (a.apollonian) {
        if (a.u.empty() || static_cast<int>(a.u.size()) != n)
            throw CLI::ValidationError("--apollonian needs --u with one entry per axis");
        int m = a.samples > 0 ? a.samples : 200;
        csv += "tau";
        for (int i = 1; i <= n; ++i) csv += ",x" + std::to_string(i);
        csv += ",residual\n";
        double hi = a.tau_max >= a.tau_min ? a.tau_max : 1.0 / sys.a1_sq();
        for (int i = 0; i < m; ++i) {
            double tau = a.tau_min + (hi - a.tau_min) * (m == 1 ? 0.0 : double(i) / (m - 1));
            try {
                Vec x = confocal::apollonian_curve_point(sys.base_sq_axes, a.u, tau);
                csv += num(tau);
                for (double v : x) csv += "," + num(v);
                csv += "," + num(confocal::apollonian_curve_residual(sys.base_sq_axes, a.u, x));
                csv += "\n";
            } catch (const confocal::Error&) {
                // parameter at a pole of the rational curve: skip the row
            }
        }
    } else if (!a.surfaces.empty()) {
        int m = a.samples > 0 ? a.samples : 200;
        csv += "lambda";
        for (int i = 1; i <= n; ++i) csv += ",x" + std::to_string(i);
        csv += "\n";
        int case_index = 0;
        for (double lam : a.surfaces) {
            confocal::CentralQuadric q = confocal::confocal_quadric(sys, lam);
            for (int i = 0; i < m; ++i) {
                confocal::Rng rng = confocal::Rng::for_case(a.seed, case_index++);
                Vec x = confocal::sample_quadric_point(q, rng);
                csv += num(lam);
                for (double v : x) csv += "," + num(v);
                csv += "\n";
            }
        }
    } else if (a.edges) {
        if (a.point.empty()) throw CLI::ValidationError("--edges needs --point");
        std::vector<confocal::Cone> cones;
        for (int k = 2; k <= n; ++k) cones.push_back(confocal::focal_cone(sys, a.point, k));
        std::vector<confocal::Transversal> edges = confocal::common_edges(cones);
        csv += "edge";
        for (int i = 1; i <= n; ++i) csv += ",d" + std::to_string(i);
        csv += "\n";
        for (std::size_t e = 0; e < edges.size(); ++e) {
            Vec d = confocal::frame_apply(cones[0].frame, edges[e].direction);
            csv += std::to_string(e + 1);
            for (double v : d) csv += "," + num(v);
            csv += "\n";
        }
    } else {
        std::cerr << "focal conic export is OBJ-only\n";
        return 1;
    }
    return emit(csv, a.output);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric theory of confocal quadrics: coordinates, cones, constructions"};
    app.require_subcommand(1);

    EllipticArgs el;
    auto* cmd_el = app.add_subcommand("elliptic", "elliptic coordinates and the axes table");
    cmd_el->add_option("--axes", el.axes, "squared semi-axes, decreasing")->delimiter(',');
    cmd_el->add_option("--lengths", el.lengths, "semi-axis lengths, decreasing")->delimiter(',');
    cmd_el->add_option("--point", el.point, "point coordinates")->delimiter(',')->required();
    cmd_el->add_option("--nudge", el.nudge, "push coordinates off the principal planes to this fraction of a_1");
    cmd_el->add_option("--tol", el.tol, "principal-plane guard relative to a_1");
    cmd_el->add_option("--output", el.output, "write the report to a file");

    StaudeArgs st;
    auto* cmd_st = app.add_subcommand("staude", "string length and focal radii");
    cmd_st->add_option("--axes", st.axes, "squared semi-axes, decreasing")->delimiter(',');
    cmd_st->add_option("--lengths", st.lengths, "semi-axis lengths, decreasing")->delimiter(',');
    cmd_st->add_option("--point", st.point, "surface point")->delimiter(',');
    cmd_st->add_flag("--project", st.project, "project an off-surface point radially");
    cmd_st->add_option("--samples", st.samples, "also sweep this many seeded surface points");
    cmd_st->add_option("--seed", st.seed, "seed for the sweep");
    cmd_st->add_option("--tol", st.tol, "on-surface tolerance");
    cmd_st->add_option("--output", st.output, "write the report to a file");

    VerifyArgs vf;
    auto* cmd_vf = app.add_subcommand("verify", "run the seeded invariant suites");
    cmd_vf->add_option("--seed", vf.seed, "suite seed");
    cmd_vf->add_option("--n", vf.max_dim, "largest dimension to sweep");
    cmd_vf->add_option("--samples", vf.cases, "cases per dimension");
    cmd_vf->add_option("--only", vf.only, "run only these suites")->delimiter(',');
    cmd_vf->add_flag("--self-test-fail", vf.self_test_fail,
                     "perturb one identity to prove failures are detected");
    cmd_vf->add_option("--output", vf.output, "write the report to a file");

    MeshArgs ms;
    auto* cmd_ms = app.add_subcommand("mesh", "export surfaces, focal conics, curves, edges");
    cmd_ms->add_option("--axes", ms.axes, "squared semi-axes, decreasing")->delimiter(',');
    cmd_ms->add_option("--lengths", ms.lengths, "semi-axis lengths, decreasing")->delimiter(',');
    cmd_ms->add_option("--surfaces", ms.surfaces, "confocal parameters to mesh")->delimiter(',');
    cmd_ms->add_flag("--focal-conics", ms.focal_conics, "export the focal ellipse and hyperbola");
    cmd_ms->add_flag("--apollonian", ms.apollonian, "export the pedal curve (CSV)");
    cmd_ms->add_option("--u", ms.u, "anchor point of the pedal curve")->delimiter(',');
    cmd_ms->add_flag("--edges", ms.edges, "export the common edges at --point");
    cmd_ms->add_option("--point", ms.point, "apex for --edges")->delimiter(',');
    cmd_ms->add_option("--samples", ms.samples, "grid/cloud resolution");
    cmd_ms->add_option("--seed", ms.seed, "seed for CSV point clouds");
    cmd_ms->add_option("--tau-min", ms.tau_min, "curve parameter start");
    cmd_ms->add_option("--tau-max", ms.tau_max, "curve parameter end (default 1/a_1^2)");
    cmd_ms->add_option("--format", ms.format, "obj or csv")->check(CLI::IsMember({"obj", "csv"}));
    cmd_ms->add_option("--output", ms.output, "write the mesh to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (cmd_el->parsed()) return cmd_elliptic(el);
        if (cmd_st->parsed()) return cmd_staude(st);
        if (cmd_vf->parsed()) return cmd_verify(vf);
        if (cmd_ms->parsed()) return cmd_mesh(ms);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const confocal::Error& e) {
        return emit_error(e);
    }
    return 1;
}
