#include <sstream>

#include "cli.hpp"

namespace relcone::cli {

namespace {

using io::Json;

std::string vec(const Json& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
    }
    return s + ")";
}

std::string span(const Json& rows) {
    std::string s = "span{";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += ", ";
        s += vec(rows[i]);
    }
    return s + "}";
}

void warnings(std::ostringstream& out, const Json& doc) {
    if (!doc.contains("warnings")) return;
    for (const auto& w : doc.at("warnings")) out << "warning: " << w.get<std::string>() << "\n";
}

void validation_lines(std::ostringstream& out, const Json& reports) {
    for (const auto& r : reports) {
        out << "oracle " << r.at("x").get<std::string>() << " ~ " << r.at("y").get<std::string>()
            << ": soundness " << r.at("soundness").get<double>() << " (tol " << r.at("tol").get<double>() << ", r "
            << r.at("radius").get<double>() << ", m " << r.at("samples").get<std::size_t>() << ", seed "
            << r.at("seed").get<std::uint64_t>() << ", discarded " << r.at("discarded").get<std::size_t>() << ") "
            << (r.at("pass").get<bool>() ? "pass" : "FAIL") << "\n";
        out << "  coverage";
        for (const auto& c : r.at("coverage")) out << " " << c.get<double>();
        out << "\n";
    }
}

void cone_text(std::ostringstream& out, const Json& doc) {
    out << "cone in C^" << doc.at("ambient").get<std::size_t>() << ": " << doc.at("subspaces").size()
        << " subspace(s)\n";
    for (const auto& s : doc.at("subspaces")) {
        out << (s.at("dim").get<int>() == 2 ? "plane " : "line  ") << span(s.at("span"));
        const Json& p = s.at("provenance");
        out << "  [" << p.at("case").get<std::string>() << " " << p.at("x").get<std::string>() << "/"
            << p.at("y").get<std::string>();
        if (p.contains("epsilon")) {
            out << ", eps " << p.at("epsilon").get<std::string>();
            if (p.contains("v_i")) out << ", n " << p.at("n_i").get<long>() << ", v " << vec(p.at("v_i"));
            if (p.value("coincident", false)) out << ", coincident";
            if (p.value("up_to_precision", false)) out << " up to precision";
        }
        out << "]\n";
    }
    if (doc.contains("pairs")) {
        for (const auto& p : doc.at("pairs")) {
            out << "pair " << p.at("x").get<std::string>() << " ~ " << p.at("y").get<std::string>() << ": "
                << p.at("case").get<std::string>() << ", " << p.at("planes").get<std::size_t>() << " plane(s), "
                << p.at("lines").get<std::size_t>() << " line(s)\n";
        }
    }
    if (doc.contains("validation")) validation_lines(out, doc.at("validation").at("reports"));
}

void join_text(std::ostringstream& out, const Json& doc) {
    out << "join report (" << doc.at("mode").get<std::string>() << ")\n";
    for (const auto& p : doc.at("points")) {
        out << "point " << vec(p.at("P")) << "\n";
        for (const auto& c : p.at("components")) {
            out << "  " << c.at("case").get<std::string>() << " "
                << (c.at("dim").get<int>() == 2 ? "plane" : "line") << " through";
            for (std::size_t i = 1; i < c.at("span").size(); ++i) out << " " << vec(c.at("span")[i]);
            if (c.value("up_to_precision", false)) out << " (up to precision)";
            out << "\n";
        }
    }
    out << "plus closure of secant lines J0";
    if (doc.at("markers").at("tangent_family").get<bool>()) out << " and tangent lines at smooth points";
    out << "\n";
}

void normalize_text(std::ostringstream& out, const Json& doc) {
    for (const auto& p : doc.at("pairs")) {
        out << "pair " << p.at("x_label").get<std::string>() << " ~ " << p.at("y_label").get<std::string>() << ": "
            << p.at("kind").get<std::string>() << "\n";
        auto standard = [&](const Json& s) {
            out << "  " << s.at("label").get<std::string>() << " k=" << s.at("k").get<long>() << " "
                << vec(s.at("coords")) << "\n    frame " << span(s.at("frame")) << "\n";
        };
        if (p.contains("x")) standard(p.at("x"));
        if (p.contains("y")) standard(p.at("y"));
        if (p.contains("standard")) standard(p.at("standard"));
        if (p.contains("tangent_x")) {
            out << "  tangents " << vec(p.at("tangent_x")) << " " << vec(p.at("tangent_y")) << "\n";
        }
    }
}

}  // namespace

std::string render_text(Command command, const io::Json& doc) {
    std::ostringstream out;
    out.precision(6);
    switch (command) {
        case Command::Cone: cone_text(out, doc); break;
        case Command::Join: join_text(out, doc); break;
        case Command::Oracle:
            validation_lines(out, doc.at("reports"));
            out << (doc.at("pass").get<bool>() ? "pass" : "FAIL") << "\n";
            break;
        case Command::Normalize: normalize_text(out, doc); break;
    }
    warnings(out, doc);
    return out.str();
}

}  // namespace relcone::cli
