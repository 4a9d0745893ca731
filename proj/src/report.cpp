#include "autdim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace autdim {

namespace {

Json cx(cplx z) { return Json::array({z.real(), z.imag()}); }

Json num_array(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

void dump_rec(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::number_float:
            if (std::isfinite(j.get<double>())) out += fmt17(j.get<double>());
            else out += "\"" + fmt17(j.get<double>()) + "\"";
            return;
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Short numeric arrays stay on one line.
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += pad_in;
                dump_rec(e, out, indent + 1);
            }
            out += flat ? "]" : "\n" + pad + "]";
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + Json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        default:
            out += j.dump();
    }
}

std::string cell_text(const Table::Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return fmt17(*d);
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

}  // namespace

std::string fmt17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_json(const Json& j) {
    std::string out;
    dump_rec(j, out, 0);
    out += "\n";
    return out;
}

Json to_json(const CxPoint& p) {
    Json a = Json::array();
    for (cplx c : p.coords()) a.push_back(cx(c));
    return a;
}

Json to_json(const DomainSpec& d) {
    Json j;
    Json params = Json::object();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, shapes::Ball>) {
                j["variant"] = "Ball";
                params["center"] = to_json(s.center);
                params["radius"] = s.radius;
            } else if constexpr (std::is_same_v<T, shapes::UnitDisk>) {
                j["variant"] = "UnitDisk";
            } else if constexpr (std::is_same_v<T, shapes::UpperHalfPlane>) {
                j["variant"] = "UpperHalfPlane";
            } else if constexpr (std::is_same_v<T, shapes::Strip>) {
                j["variant"] = "Strip";
            } else if constexpr (std::is_same_v<T, shapes::Annulus>) {
                j["variant"] = "Annulus";
                params["rIn"] = s.r_in;
                params["rOut"] = s.r_out;
            } else if constexpr (std::is_same_v<T, shapes::Ellipse>) {
                j["variant"] = "Ellipse";
                params["a"] = s.a;
                params["b"] = s.b;
            } else if constexpr (std::is_same_v<T, shapes::DiskMinusDisk>) {
                j["variant"] = "DiskMinusDisk";
                params["c"] = cx(s.c);
                params["rho"] = s.rho;
            } else if constexpr (std::is_same_v<T, shapes::ProductMinusDiagonal>) {
                j["variant"] = "ProductMinusDiagonal";
                params["base"] = to_json(*s.base);
            } else {
                j["variant"] = "Sampled";
                params["n"] = s.n;
                params["meshSize"] = s.mesh.size();
                params["meshTol"] = s.mesh_tol;
            }
        },
        d.variant());
    j["params"] = params;
    return j;
}

Json to_json(const MetricBounds& b) {
    Json j;
    j["lower"] = b.lower;
    j["upper"] = b.upper;
    j["upperExact"] = b.upper_exact;
    j["warning"] = b.warning;
    j["witnessDegree"] = b.witness ? Json(b.witness->degree()) : Json(nullptr);
    if (b.witness) {
        Json w;
        w["base"] = to_json(b.witness->base);
        w["normalizer"] = b.witness->normalizer;
        Json terms = Json::array();
        for (const auto& t : b.witness->terms) {
            Json e = Json::array();
            for (int x : t.exps) e.push_back(x);
            terms.push_back(Json{{"exps", e}, {"coeff", cx(t.coeff)}});
        }
        w["terms"] = terms;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const LemmaReport& r) {
    Json j;
    j["lemmaId"] = to_string(r.id);
    j["status"] = to_string(r.status);
    j["samples"] = r.samples;
    j["worstMargin"] = r.worst_margin;
    j["witness"] = r.witness;
    j["uncertifiedNegative"] = r.uncertified_negative;
    return j;
}

Json to_json(const DimReport& r) {
    Json j;
    j["estimatedDim"] = r.estimated_dim;
    j["label"] = "lower-bound heuristic at the stated degree cap";
    j["degree"] = r.degree;
    j["tolerance"] = r.tol;
    j["samples"] = r.samples;
    j["gapRatio"] = r.gap_ratio;
    j["singularValues"] = num_array(r.singular_values);
    Json fields = Json::array();
    for (const auto& f : r.null_fields) {
        Json c = Json::array();
        for (cplx v : f.planar_coeffs()) c.push_back(cx(v));
        fields.push_back(c);
    }
    j["nullFields"] = fields;
    return j;
}

Json to_json(const OrbitReport& r) {
    Json j;
    j["classification"] = to_string(r.classification);
    j["minBoundaryDist"] = r.min_boundary_dist;
    j["recurrenceGap"] = r.recurrence_gap;
    j["recurrenceTime"] = r.recurrence_time;
    j["horizon"] = r.horizon;
    return j;
}

Json to_json(const ConvergenceReport& r) {
    Json j;
    Json js = Json::array();
    for (int v : r.js) js.push_back(v);
    j["js"] = js;
    j["supDeviations"] = num_array(r.sup_deviations);
    j["normalizers"] = num_array(r.normalizers);
    j["K"] = r.k_descriptor;
    return j;
}

Json to_json(const SemicontinuityTable& t) {
    Json j;
    Json rows = Json::array();
    for (const auto& m : t.members) {
        Json row;
        row["param"] = m.param;
        row["hausdorff"] = m.hausdorff;
        row["dim"] = to_json(m.dim);
        rows.push_back(row);
    }
    j["members"] = rows;
    j["limit"] = to_json(t.limit);
    j["semicontinuityHolds"] = t.holds;
    return j;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + cell_text(t.header[i]);
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += "\n";
    }
    return out;
}

std::string to_svg(const Table& t, std::size_t x, const std::string& title, bool log_y) {
    constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (c == x) continue;
        Series s{t.header[c], {}};
        for (const auto& row : t.rows) {
            const double* xv = std::get_if<double>(&row[x]);
            const double* yv = std::get_if<double>(&row[c]);
            if (!xv || !yv || !std::isfinite(*xv) || !std::isfinite(*yv)) continue;
            if (log_y && !(*yv > 0.0)) continue;
            s.pts.emplace_back(*xv, log_y ? std::log10(*yv) : *yv);
        }
        if (!s.pts.empty()) series.push_back(std::move(s));
    }
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& s : series)
        for (const auto& [px, py] : s.pts) {
            if (first) {
                x0 = x1 = px;
                y0 = y1 = py;
                first = false;
            }
            x0 = std::min(x0, px);
            x1 = std::max(x1, px);
            y0 = std::min(y0, py);
            y1 = std::max(y1, py);
        }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto sx = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
    auto sy = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };
    std::ostringstream os;
    char buf[128];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    std::snprintf(buf, sizeof buf, "%.4g", x0);
    os << "<text x=\"" << L << "\" y=\"" << H - B + 18 << "\" font-size=\"12\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", x1);
    os << "<text x=\"" << W - R << "\" y=\"" << H - B + 18 << "\" text-anchor=\"end\" font-size=\"12\">" << buf
       << "</text>\n";
    std::snprintf(buf, sizeof buf, "%s%.4g", log_y ? "1e" : "", y0);
    os << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" text-anchor=\"end\" font-size=\"12\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%s%.4g", log_y ? "1e" : "", y1);
    os << "<text x=\"" << L - 6 << "\" y=\"" << T + 10 << "\" text-anchor=\"end\" font-size=\"12\">" << buf
       << "</text>\n";
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
       << t.header[x] << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* col = colors[i % 6];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" points=\"";
        for (const auto& [px, py] : series[i].pts) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(px), sy(py));
            os << buf;
        }
        os << "\"/>\n";
        os << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 16 * (i + 1) << "\" text-anchor=\"end\" font-size=\"12\" fill=\""
           << col << "\">" << series[i].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace autdim
