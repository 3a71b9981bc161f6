#include "trunclap/domain.hpp"

#include <fstream>
#include <sstream>

namespace trunclap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

ConvexPolygon rectangle_polygon(const HyperRectSpec& r) {
    const double a = r.halfsides[0];
    const double b = r.halfsides[1];
    return ConvexPolygon({{-a, -b}, {a, -b}, {a, b}, {-a, b}});
}

}  // namespace

void validate(const DomainSpec& domain) {
    std::visit(overloaded{
                   [](const BallSpec& b) {
                       if (!(b.radius > 0.0) || !std::isfinite(b.radius))
                           throw GeometryError("ball radius must be positive");
                       if (b.dim < 1) throw GeometryError("ball dimension must be >= 1");
                   },
                   [](const HyperRectSpec& r) {
                       if (r.halfsides.empty()) throw GeometryError("hyperrect needs at least one half side");
                       for (double a : r.halfsides)
                           if (!(a > 0.0) || !std::isfinite(a))
                               throw GeometryError("hyperrect half sides must be positive");
                   },
                   [](const PolygonSpec&) {},
                   [](const ReuleauxSpec& r) {
                       if (r.sides < 3 || r.sides % 2 == 0)
                           throw GeometryError("reuleaux polygon needs an odd number of sides >= 3");
                       if (!(r.width > 0.0) || !std::isfinite(r.width))
                           throw GeometryError("reuleaux width must be positive");
                       if (r.arc_samples < 2) throw GeometryError("reuleaux arc_samples must be >= 2");
                   },
               },
               domain);
}

int dimension(const DomainSpec& domain) {
    return std::visit(overloaded{
                          [](const BallSpec& b) { return b.dim; },
                          [](const HyperRectSpec& r) { return static_cast<int>(r.halfsides.size()); },
                          [](const PolygonSpec&) { return 2; },
                          [](const ReuleauxSpec&) { return 2; },
                      },
                      domain);
}

std::string describe(const DomainSpec& domain) {
    return std::visit(
        overloaded{
            [](const BallSpec& b) { return "ball(r=" + fmt_num(b.radius) + ",dim=" + std::to_string(b.dim) + ")"; },
            [](const HyperRectSpec& r) {
                std::string s = "hyperrect(";
                for (std::size_t i = 0; i < r.halfsides.size(); ++i) s += (i ? "," : "") + fmt_num(r.halfsides[i]);
                return s + ")";
            },
            [](const PolygonSpec& p) { return "polygon(" + std::to_string(p.polygon.size()) + " vertices)"; },
            [](const ReuleauxSpec& r) {
                return "reuleaux(n=" + std::to_string(r.sides) + ",width=" + fmt_num(r.width) +
                       ",samples=" + std::to_string(r.arc_samples) + ")";
            },
        },
        domain);
}

DomainSpec scaled(const DomainSpec& domain, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw GeometryError("scale factor must be positive");
    return std::visit(overloaded{
                          [t](const BallSpec& b) -> DomainSpec { return BallSpec{t * b.radius, b.dim}; },
                          [t](const HyperRectSpec& r) -> DomainSpec {
                              HyperRectSpec out = r;
                              for (double& a : out.halfsides) a *= t;
                              return out;
                          },
                          [t](const PolygonSpec& p) -> DomainSpec { return PolygonSpec{scale(p.polygon, t)}; },
                          [t](const ReuleauxSpec& r) -> DomainSpec {
                              return ReuleauxSpec{r.sides, t * r.width, r.arc_samples};
                          },
                      },
                      domain);
}

PlanarRegion planar_region(const DomainSpec& domain) {
    validate(domain);
    if (dimension(domain) != 2)
        throw GeometryError("grid solver is planar; domain " + describe(domain) + " has dimension " +
                            std::to_string(dimension(domain)));
    return std::visit(overloaded{
                          [](const BallSpec& b) -> PlanarRegion { return Disk{{0.0, 0.0}, b.radius}; },
                          [](const HyperRectSpec& r) -> PlanarRegion { return rectangle_polygon(r); },
                          [](const PolygonSpec& p) -> PlanarRegion { return p.polygon; },
                          [](const ReuleauxSpec& r) -> PlanarRegion {
                              return reuleaux_polygon(r.sides, r.width, r.arc_samples);
                          },
                      },
                      domain);
}

ConvexPolygon as_polygon(const DomainSpec& domain) {
    PlanarRegion region = planar_region(domain);
    if (const auto* poly = std::get_if<ConvexPolygon>(&region)) return *poly;
    throw GeometryError("domain " + describe(domain) + " has no polygonal form");
}

DomainSpec domain_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw DomainParseError("domain must be a JSON object");
        const std::string type = j.at("type").get<std::string>();
        DomainSpec out;
        if (type == "ball") {
            out = BallSpec{j.at("r").get<double>(), j.value("dim", 2)};
        } else if (type == "hyperrect") {
            out = HyperRectSpec{j.at("alphas").get<std::vector<double>>()};
        } else if (type == "polygon") {
            std::vector<Point2> v;
            for (const auto& p : j.at("vertices")) {
                if (!p.is_array() || p.size() != 2) throw DomainParseError("polygon vertex must be [x, y]");
                v.push_back({p[0].get<double>(), p[1].get<double>()});
            }
            out = PolygonSpec{ConvexPolygon(std::move(v))};
        } else if (type == "reuleaux") {
            out = ReuleauxSpec{j.at("n").get<int>(), j.at("width").get<double>(), j.value("arc_samples", 64)};
        } else {
            throw DomainParseError("unknown domain type '" + type + "'");
        }
        validate(out);
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw DomainParseError(std::string("invalid domain JSON: ") + e.what());
    }
}

nlohmann::json domain_to_json(const DomainSpec& domain) {
    return std::visit(overloaded{
                          [](const BallSpec& b) {
                              return nlohmann::json{{"type", "ball"}, {"r", b.radius}, {"dim", b.dim}};
                          },
                          [](const HyperRectSpec& r) {
                              return nlohmann::json{{"type", "hyperrect"}, {"alphas", r.halfsides}};
                          },
                          [](const PolygonSpec& p) {
                              nlohmann::json v = nlohmann::json::array();
                              for (const Point2& q : p.polygon.vertices()) v.push_back({q.x, q.y});
                              return nlohmann::json{{"type", "polygon"}, {"vertices", v}};
                          },
                          [](const ReuleauxSpec& r) {
                              return nlohmann::json{{"type", "reuleaux"},
                                                    {"n", r.sides},
                                                    {"width", r.width},
                                                    {"arc_samples", r.arc_samples}};
                          },
                      },
                      domain);
}

DomainSpec load_domain(std::string_view arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    nlohmann::json j;
    if (first != std::string_view::npos && arg[first] == '{') {
        try {
            j = nlohmann::json::parse(arg);
        } catch (const nlohmann::json::parse_error& e) {
            throw DomainParseError(std::string("malformed inline domain JSON: ") + e.what());
        }
    } else {
        const std::string path(arg);
        std::ifstream in(path);
        if (!in) throw DomainParseError("cannot open domain file '" + path + "'");
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw DomainParseError("malformed JSON in '" + path + "': " + e.what());
        }
    }
    return domain_from_json(j);
}

}  // namespace trunclap
