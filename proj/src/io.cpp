#include "specflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specflow {

namespace {

Complex parse_entry(const Json& e) {
    if (e.is_number()) return Complex(e.get<double>(), 0.0);
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return Complex(e[0].get<double>(), e[1].get<double>());
    throw std::invalid_argument(
        "numeric entries must be a real number or an [re, im] pair");
}

CVector parse_vector(const Json& arr, const char* name) {
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument(std::string(name) +
                                    " must be a nonempty array");
    CVector v;
    for (const auto& e : arr) v.push_back(parse_entry(e));
    return v;
}

CMatrix parse_matrix(const Json& rows, const char* name) {
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument(std::string(name) +
                                    " must be a nonempty array of rows");
    const int n = static_cast<int>(rows.size());
    CMatrix A(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument(std::string(name) +
                                        " must be square");
        for (int j = 0; j < n; ++j) A.at(i, j) = parse_entry(row[j]);
    }
    A.refresh_real_flag();
    return A;
}

Json emit_entry(Complex z) {
    if (std::imag(z) == 0.0) return Json(std::real(z));
    return Json::array({std::real(z), std::imag(z)});
}

Json emit_vector(const CVector& v) {
    Json arr = Json::array();
    for (const auto& e : v) arr.push_back(emit_entry(e));
    return arr;
}

Json emit_matrix(const CMatrix& A) {
    Json rows = Json::array();
    for (int i = 0; i < A.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < A.n(); ++j) row.push_back(emit_entry(A.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

const char* kind_name(FrozenKind k) {
    return k == FrozenKind::structural ? "structural" : "accidental";
}

const char* axis_name(AxisClaim a) {
    switch (a) {
        case AxisClaim::two_real: return "two_real";
        case AxisClaim::two_imaginary: return "two_imaginary";
        case AxisClaim::real_and_imaginary: return "real_and_imaginary";
        default: return "unspecified";
    }
}

Json verdict_json(const DefinabilityVerdict& v) {
    Json j;
    j["definable"] = v.definable;
    if (!v.definable) {
        j["witness_z"] = to_json(v.z);
        j["witness_t"] = std::isfinite(v.t) ? Json(v.t) : Json("inf");
        j["witness_tau"] = to_json(v.tau);
        j["frozen_obstruction"] = v.frozen_obstruction;
    }
    return j;
}

}  // namespace

RankOneSystem parse_system(const Json& doc) {
    if (!doc.is_object())
        throw std::invalid_argument("system document must be a JSON object");
    if (!doc.contains("A")) throw std::invalid_argument("missing field: A");
    if (!doc.contains("u")) throw std::invalid_argument("missing field: u");

    const CMatrix A = parse_matrix(doc["A"], "A");
    const CVector u = parse_vector(doc["u"], "u");
    if (static_cast<int>(u.size()) != A.n())
        throw std::invalid_argument("u length does not match A");

    if (doc.contains("structure")) {
        if (doc.contains("v"))
            throw std::invalid_argument(
                "structured systems derive v; remove the explicit v field");
        const auto& s = doc["structure"];
        if (!s.is_object() || !s.contains("kind") || !s.contains("G"))
            throw std::invalid_argument(
                "structure needs fields kind (H or J) and G");
        const std::string kind = s["kind"].get<std::string>();
        StructureContext ctx{StructureKind::h_selfadjoint,
                             parse_matrix(s["G"], "G")};
        if (kind == "H") {
            ctx.kind = StructureKind::h_selfadjoint;
        } else if (kind == "J") {
            ctx.kind = StructureKind::j_hamiltonian;
        } else {
            throw std::invalid_argument("structure kind must be H or J");
        }
        return make_structured_system(A, u, ctx);
    }

    if (!doc.contains("v")) throw std::invalid_argument("missing field: v");
    const CVector v = parse_vector(doc["v"], "v");
    if (static_cast<int>(v.size()) != A.n())
        throw std::invalid_argument("v length does not match A");
    return RankOneSystem(A, u, v);
}

RankOneSystem parse_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json doc;
    try {
        in >> doc;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " +
                                    e.what());
    }
    return parse_system(doc);
}

Json emit_system(const RankOneSystem& sys) {
    Json doc;
    doc["A"] = emit_matrix(sys.A);
    doc["u"] = emit_vector(sys.u);
    if (sys.structure) {
        Json s;
        s["kind"] =
            sys.structure->kind == StructureKind::h_selfadjoint ? "H" : "J";
        s["G"] = emit_matrix(sys.structure->G);
        doc["structure"] = s;
    } else {
        doc["v"] = emit_vector(sys.v);
    }
    return doc;
}

Json to_json(Complex z) { return Json::array({std::real(z), std::imag(z)}); }

Json to_json(const Poly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
    return arr;
}

Json to_json(const SpectralPortrait& p) {
    Json j;
    j["n"] = p.sys.n();
    j["l"] = p.l();
    j["mA"] = to_json(p.mA);
    j["puv"] = to_json(p.puv);
    j["q0"] = to_json(p.q0);
    j["char"] = to_json(p.charA);
    Json eigs = Json::array();
    for (const auto& e : p.eigsA) {
        Json je;
        je["value"] = to_json(e.value);
        je["char_mult"] = e.char_mult;
        je["min_mult"] = e.min_mult;
        eigs.push_back(je);
    }
    j["eigenvalues_A"] = eigs;
    Json frozen = Json::array();
    for (const auto& f : p.frozen) {
        Json jf;
        jf["value"] = to_json(f.value);
        jf["kind"] = kind_name(f.kind);
        jf["q_pole_lost"] = f.q_pole_lost;
        frozen.push_back(jf);
    }
    j["frozen"] = frozen;
    Json crit = Json::array();
    for (const auto& c : p.critical) {
        Json jc;
        jc["z"] = to_json(c.z);
        jc["t"] = c.finite_tau ? Json(c.t) : Json("inf");
        jc["tau"] = c.finite_tau ? to_json(c.tau) : Json("inf");
        jc["kappa_local"] = c.kappa_local;
        crit.push_back(jc);
    }
    j["critical"] = crit;
    j["definability"]["real_ray"] =
        verdict_json(definability(p, DefinabilityMode::real_ray));
    j["definability"]["unit_circle"] =
        verdict_json(definability(p, DefinabilityMode::unit_circle));
    return j;
}

Json to_json(const Trajectory& t) {
    Json j;
    j["path"] = t.path == Trajectory::Path::ray ? "ray" : "circle";
    j[t.path == Trajectory::Path::ray ? "theta" : "t"] = t.fixed;
    j["branches"] = t.branches();
    j["steps"] = t.params.size();
    Json events = Json::array();
    for (const auto& e : t.events) {
        Json je;
        je["param"] = e.param;
        je["tau"] = to_json(e.tau);
        je["z"] = to_json(e.z);
        je["critical_index"] = e.critical_index;
        je["frozen_pathology"] = e.frozen_pathology;
        events.push_back(je);
    }
    j["events"] = events;
    if (!t.monodromy.empty()) {
        j["monodromy"] = t.monodromy;
        j["cycle_lengths"] = permutation_cycles(t.monodromy);
    }
    return j;
}

Json to_json(const LevelSet& ls) {
    Json j;
    j["t"] = ls.t;
    j["polylines"] = ls.polylines.size();
    Json closed = Json::array();
    for (bool c : ls.closed) closed.push_back(c);
    j["closed"] = closed;
    Json sing = Json::array();
    for (const auto& z : ls.singular_points) sing.push_back(to_json(z));
    j["singular_points"] = sing;
    return j;
}

Json to_json(const AsymptoticModel& m) {
    Json j;
    j["degenerate"] = m.degenerate;
    if (!m.degenerate) {
        j["kappa"] = m.kappa;
        j["lead"] = to_json(m.lead);
        j["c_minus1"] = to_json(m.c_minus1);
        j["c0"] = to_json(m.c0);
        Json bb = Json::array();
        for (const auto& b : m.bounded) {
            Json jb;
            jb["zeta"] = to_json(b.zeta);
            jb["k"] = b.k;
            jb["frozen"] = b.frozen;
            if (!b.frozen) jb["beta"] = to_json(b.beta);
            bb.push_back(jb);
        }
        j["bounded"] = bb;
    }
    return j;
}

Json to_json(const AsymptoticsReport& r) {
    Json j;
    j["degenerate"] = r.degenerate;
    if (r.degenerate) {
        j["constant_spectrum_error"] = r.constant_spectrum_error;
        return j;
    }
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json jr;
        jr["tau"] = to_json(row.tau);
        jr["err_unbounded"] = row.err_unbounded;
        jr["err_bounded"] = row.err_bounded;
        jr["err_frozen"] = row.err_frozen;
        jr["err_max"] = row.err_max;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    j["matched"] = r.matched;
    j["slopes_defined"] = r.slopes_defined;
    if (r.slopes_defined) {
        j["slope_unbounded"] = r.slope_unbounded;
        j["slope_overall"] = r.slope_overall;
    }
    j["slope_ok"] = r.slope_ok;
    return j;
}

Json to_json(const HamiltonianForecast& f) {
    Json j;
    j["kappa"] = f.kappa;
    j["count"] = f.count;
    j["moment_sign"] = f.moment_sign;
    j["positive_tau"] = axis_name(f.positive_tau);
    j["negative_tau"] = axis_name(f.negative_tau);
    return j;
}

Json to_json(const SymmetryReport& r) {
    Json j;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json jr;
        jr["tau"] = to_json(row.tau);
        if (row.conj_checked) jr["conjugation_error"] = row.conj_error;
        if (row.neg_checked) jr["negation_error"] = row.neg_error;
        rows.push_back(jr);
    }
    j["rows"] = rows;
    j["max_conjugation_error"] = r.max_conj_error;
    j["max_negation_error"] = r.max_neg_error;
    j["pass"] = r.pass;
    return j;
}

Json to_json(const DivergenceCount& d) {
    Json j;
    j["l"] = d.l;
    j["imprimitivity_index"] = d.index;
    j["kappa"] = d.kappa;
    j["check"] = d.check;
    return j;
}

Json to_json(const VerificationReport& r) {
    Json j;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (c.skipped) jc["skipped"] = true;
        jc["measured"] = c.measured;
        jc["bound"] = c.bound;
        if (!c.note.empty()) jc["note"] = c.note;
        checks.push_back(jc);
    }
    j["checks"] = checks;
    j["all_pass"] = r.all_pass;
    j["oracle_skipped"] = r.oracle_skipped;
    return j;
}

namespace {

void csv_complex_row(std::ostringstream& os, double param, int id, Complex z,
                     int flag) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g,%.17g,%d\n", param, id,
                  std::real(z), std::imag(z), flag);
    os << buf;
}

}  // namespace

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream os;
    os << "parameter,branch_id,re,im,event_flag\n";
    for (size_t s = 0; s < t.params.size(); ++s) {
        int flag = 0;
        for (const auto& e : t.events) {
            double step = 0.0;
            if (s + 1 < t.params.size())
                step = std::abs(t.params[s + 1] - t.params[s]);
            else if (s > 0)
                step = std::abs(t.params[s] - t.params[s - 1]);
            if (std::abs(e.param - t.params[s]) <= 0.5 * step) flag = 1;
        }
        for (size_t b = 0; b < t.samples[s].size(); ++b)
            csv_complex_row(os, t.params[s], static_cast<int>(b),
                            t.samples[s][b], flag);
    }
    return os.str();
}

std::string levelset_csv(const LevelSet& ls) {
    std::ostringstream os;
    os << "parameter,branch_id,re,im,event_flag\n";
    for (size_t li = 0; li < ls.polylines.size(); ++li) {
        for (const auto& z : ls.polylines[li]) {
            int flag = 0;
            for (const auto& s : ls.singular_points)
                if (std::abs(z - s) <= 1e-2 * (1.0 + std::abs(s))) flag = 1;
            csv_complex_row(os, ls.t, static_cast<int>(li), z, flag);
        }
    }
    return os.str();
}

std::string render_svg(const SvgPlot& plot) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    auto grow = [&](Complex z) {
        x0 = std::min(x0, std::real(z));
        x1 = std::max(x1, std::real(z));
        y0 = std::min(y0, std::imag(z));
        y1 = std::max(y1, std::imag(z));
    };
    for (const auto& pl : plot.polylines)
        for (const auto& z : pl.points) grow(z);
    for (const auto& m : plot.markers) grow(m.pos);
    if (x0 > x1) {
        x0 = y0 = -1.0;
        x1 = y1 = 1.0;
    }
    const double padx = 0.05 * std::max(1e-9, x1 - x0);
    const double pady = 0.05 * std::max(1e-9, y1 - y0);
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;
    const double W = 800.0, H = 800.0;
    const double sx = W / (x1 - x0), sy = H / (y1 - y0);
    const double s = std::min(sx, sy);
    auto px = [&](Complex z) { return (std::real(z) - x0) * s; };
    auto py = [&](Complex z) { return H - (std::imag(z) - y0) * s; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Axes, when visible.
    if (x0 < 0.0 && x1 > 0.0)
        os << "<line x1=\"" << px(Complex(0, 0)) << "\" y1=\"0\" x2=\""
           << px(Complex(0, 0)) << "\" y2=\"" << H
           << "\" stroke=\"#dddddd\"/>\n";
    if (y0 < 0.0 && y1 > 0.0)
        os << "<line x1=\"0\" y1=\"" << py(Complex(0, 0)) << "\" x2=\"" << W
           << "\" y2=\"" << py(Complex(0, 0)) << "\" stroke=\"#dddddd\"/>\n";

    for (const auto& pl : plot.polylines) {
        if (pl.points.empty()) continue;
        os << "<polyline fill=\"none\" stroke=\"" << pl.color
           << "\" stroke-width=\"" << pl.width << "\" points=\"";
        for (const auto& z : pl.points) os << px(z) << "," << py(z) << " ";
        os << "\"/>\n";
    }
    for (const auto& m : plot.markers) {
        const double cx = px(m.pos), cy = py(m.pos);
        switch (m.shape) {
            case SvgMarker::Shape::circle:
                os << "<circle cx=\"" << cx << "\" cy=\"" << cy
                   << "\" r=\"4\" fill=\"" << m.color << "\"/>\n";
                break;
            case SvgMarker::Shape::star:
                os << "<path d=\"M" << cx - 5 << " " << cy << " L" << cx + 5
                   << " " << cy << " M" << cx << " " << cy - 5 << " L" << cx
                   << " " << cy + 5 << " M" << cx - 3.5 << " " << cy - 3.5
                   << " L" << cx + 3.5 << " " << cy + 3.5 << " M" << cx - 3.5
                   << " " << cy + 3.5 << " L" << cx + 3.5 << " " << cy - 3.5
                   << "\" stroke=\"" << m.color << "\" stroke-width=\"1.5\"/>\n";
                break;
            case SvgMarker::Shape::triangle:
                os << "<polygon points=\"" << cx << "," << cy - 5 << " "
                   << cx - 4.5 << "," << cy + 4 << " " << cx + 4.5 << ","
                   << cy + 4 << "\" fill=\"" << m.color << "\"/>\n";
                break;
        }
    }
    os << "</svg>\n";
    return os.str();
}

namespace {

const char* palette(int i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return colors[i % 8];
}

void add_portrait_markers(const SpectralPortrait& p, SvgPlot& plot) {
    for (const auto& e : p.eigsA)
        plot.markers.push_back({e.value, SvgMarker::Shape::star, "#2ca02c"});
    if (p.puv.degree() >= 1)
        for (const auto& r : p.puv.roots())
            plot.markers.push_back({r.value, SvgMarker::Shape::star, "#1f77b4"});
    for (const auto& c : p.critical)
        plot.markers.push_back({c.z, SvgMarker::Shape::triangle, "#d62728"});
}

}  // namespace

SvgPlot plot_trajectory(const SpectralPortrait& p, const Trajectory& t) {
    SvgPlot plot;
    for (int b = 0; b < t.branches(); ++b) {
        SvgPolyline pl;
        pl.color = palette(b);
        for (size_t s = 0; s < t.params.size(); ++s)
            pl.points.push_back(t.samples[s][b]);
        plot.polylines.push_back(std::move(pl));
    }
    add_portrait_markers(p, plot);
    for (const auto& e : t.events)
        plot.markers.push_back({e.z, SvgMarker::Shape::circle, "#000000"});
    return plot;
}

SvgPlot plot_levelset(const SpectralPortrait& p, const LevelSet& ls) {
    SvgPlot plot;
    for (size_t i = 0; i < ls.polylines.size(); ++i) {
        SvgPolyline pl;
        pl.color = palette(static_cast<int>(i));
        pl.points = ls.polylines[i];
        plot.polylines.push_back(std::move(pl));
    }
    add_portrait_markers(p, plot);
    for (const auto& z : ls.singular_points)
        plot.markers.push_back({z, SvgMarker::Shape::circle, "#000000"});
    return plot;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

}  // namespace specflow
