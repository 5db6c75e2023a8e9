#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewgeom/skewgeom.hpp"

namespace skewgeom::cli {
namespace {

using nlohmann::json;

struct ParseFailure : std::runtime_error {
    explicit ParseFailure(const std::string& token)
        : std::runtime_error("cannot parse number: '" + token + "'") {}
};

Scalar parse_number(const std::string& token) {
    Scalar value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) throw ParseFailure(token);
    return value;
}

std::vector<Scalar> parse_numbers(const std::vector<std::string>& tokens, std::size_t expected,
                                  const char* what) {
    if (tokens.size() != expected) {
        throw CLI::ValidationError(std::string(what) + ": expected " + std::to_string(expected) +
                                   " numbers, got " + std::to_string(tokens.size()));
    }
    std::vector<Scalar> out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) out.push_back(parse_number(t));
    return out;
}

std::string num(Scalar v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json vec_json(const Vec2& v) { return json::array({v.x, v.y}); }
json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Frame frame_from_flat(const std::vector<Scalar>& v) {
    return frame_from_vectors({v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]});
}

// ---------------------------------------------------------------------------
// basis

int cmd_basis(const std::vector<std::string>& tokens, bool as_json, std::ostream& out) {
    const std::vector<Scalar> v = parse_numbers(tokens, 9, "basis");
    const Frame f = frame_from_flat(v);
    if (as_json) {
        json rec;
        rec["gram"] = json::array();
        rec["gram_inv"] = json::array();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                rec["gram"].push_back(f.gram(i, j));
                rec["gram_inv"].push_back(f.gram_inv(i, j));
            }
        rec["oriented_volume"] = f.oriented_volume;
        rec["orientation"] = f.orientation;
        out << rec.dump() << "\n";
        return 0;
    }
    out << "gram:\n";
    for (int i = 0; i < 3; ++i) {
        out << " ";
        for (int j = 0; j < 3; ++j) out << " " << num(f.gram(i, j));
        out << "\n";
    }
    out << "inverse gram:\n";
    for (int i = 0; i < 3; ++i) {
        out << " ";
        for (int j = 0; j < 3; ++j) out << " " << num(f.gram_inv(i, j));
        out << "\n";
    }
    out << "oriented volume: " << num(f.oriented_volume) << "\n";
    out << "orientation: " << (f.orientation > 0 ? "right" : "left") << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// product

int cmd_product(const std::string& kind, const std::vector<std::string>& tokens,
                const std::vector<std::string>& basis_tokens, bool as_json, std::ostream& out) {
    Frame f = Frame::reference();
    if (!basis_tokens.empty()) f = frame_from_flat(parse_numbers(basis_tokens, 9, "--basis"));
    if (kind == "scalar" || kind == "vector") {
        const std::vector<Scalar> v = parse_numbers(tokens, 6, "product operands");
        const Vec3 a{v[0], v[1], v[2]}, b{v[3], v[4], v[5]};
        if (kind == "scalar") {
            const Scalar r = scalar_product(a, b, f);
            if (as_json)
                out << json{{"scalar_product", r}}.dump() << "\n";
            else
                out << "scalar product: " << num(r) << "\n";
        } else {
            const Vec3 r = vector_product(a, b, f);
            if (as_json)
                out << json{{"vector_product", vec_json(r)}}.dump() << "\n";
            else
                out << "vector product: " << num(r.x) << " " << num(r.y) << " " << num(r.z)
                    << "\n";
        }
        return 0;
    }
    const std::vector<Scalar> v = parse_numbers(tokens, 9, "product operands");
    const Vec3 a{v[0], v[1], v[2]}, b{v[3], v[4], v[5]}, c{v[6], v[7], v[8]};
    const Scalar r = mixed_product(a, b, c, f);
    if (as_json)
        out << json{{"mixed_product", r}}.dump() << "\n";
    else
        out << "mixed product: " << num(r) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// identity-check

int cmd_identity_check(std::uint64_t seed, bool as_json, std::ostream& out) {
    // contraction identities against explicit epsilon sums, exhaustively
    Scalar c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            for (int p = 1; p <= 3; ++p)
                for (int i = 1; i <= 3; ++i)
                    for (int j = 1; j <= 3; ++j)
                        for (int k = 1; k <= 3; ++k) {
                            c1 = std::max(c1, std::abs(first_contraction(m, n, p, i, j, k) -
                                                       epsilon(m, n, p) * epsilon(i, j, k)));
                        }
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    Scalar sum = 0.0;
                    for (int k = 1; k <= 3; ++k) sum += epsilon(m, n, k) * epsilon(i, j, k);
                    c2 = std::max(c2, std::abs(second_contraction(m, n, i, j) - sum));
                }
    for (int m = 1; m <= 3; ++m)
        for (int i = 1; i <= 3; ++i) {
            Scalar sum = 0.0;
            for (int j = 1; j <= 3; ++j)
                for (int k = 1; k <= 3; ++k) sum += epsilon(m, j, k) * epsilon(i, j, k);
            c3 = std::max(c3, std::abs(third_contraction(m, i) - sum));
        }
    {
        Scalar sum = 0.0;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                for (int k = 1; k <= 3; ++k) sum += epsilon(i, j, k) * epsilon(i, j, k);
        c4 = std::abs(fourth_contraction() - sum);
    }

    // sampled identity residuals in random frames
    std::mt19937_64 engine(seed);
    auto uni = [&](Scalar lo, Scalar hi) {
        return std::uniform_real_distribution<Scalar>(lo, hi)(engine);
    };
    auto rand_vec = [&]() { return Vec3{uni(-2, 2), uni(-2, 2), uni(-2, 2)}; };
    auto rand_frame = [&]() {
        for (;;) {
            const Vec3 e1 = rand_vec(), e2 = rand_vec(), e3 = rand_vec();
            if (std::abs(Mat3::from_columns(e1, e2, e3).det()) < 0.05) continue;
            const Frame f = frame_from_vectors(e1, e2, e3);
            const EigenSym3 eig = eigen_sym3(f.gram);
            const Scalar lo = std::min({eig.values[0], eig.values[1], eig.values[2]});
            const Scalar hi = std::max({eig.values[0], eig.values[1], eig.values[2]});
            if (lo <= 0.0 || std::sqrt(hi / lo) > 100.0) continue;
            return f;
        }
    };
    Scalar triple = 0.0, jacobi = 0.0, rotation = 0.0, relation = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const Frame f = rand_frame();
        const Vec3 a = rand_vec(), b = rand_vec(), c = rand_vec();
        const Scalar scale =
            std::max(1.0, metric_norm(a, f) * metric_norm(b, f) * metric_norm(c, f));
        const Vec3 nested = vector_product(a, vector_product(b, c, f), f);
        triple = std::max(
            triple, metric_norm(nested - triple_product_expand(a, b, c, f), f) / scale);
        jacobi = std::max(jacobi, jacobi_residual(a, b, c, f) / scale);
        if (metric_norm(b, f) > 0.1) {
            const Scalar pair_scale = std::max(1.0, metric_norm(a, f) * metric_norm(b, f));
            rotation = std::max(rotation, metric_norm(vector_product_via_rotation(a, b, f) -
                                                          vector_product(a, b, f),
                                                      f) /
                                              pair_scale);
        }
        relation = std::max(relation, struct_constants_relation_check(f));
    }

    if (as_json) {
        out << json{{"contraction1", c1},      {"contraction2", c2},
                    {"contraction3", c3},      {"contraction4", c4},
                    {"triple_expansion", triple}, {"jacobi", jacobi},
                    {"rotation_decomposition", rotation}, {"struct_constants", relation}}
                   .dump()
            << "\n";
        return 0;
    }
    out << "contraction formula 1 residual: " << num(c1) << "\n";
    out << "contraction formula 2 residual: " << num(c2) << "\n";
    out << "contraction formula 3 residual: " << num(c3) << "\n";
    out << "contraction formula 4 residual: " << num(c4) << "\n";
    out << "triple expansion max residual: " << num(triple) << "\n";
    out << "jacobi identity max residual: " << num(jacobi) << "\n";
    out << "rotation decomposition max residual: " << num(rotation) << "\n";
    out << "structural constants max residual: " << num(relation) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// convert

json line2d_record(const line2d::Form& form) {
    return std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, line2d::Parametric>)
                return {{"form", "parametric"}, {"r0", vec_json(f.r0)}, {"a", vec_json(f.a)}};
            else if constexpr (std::is_same_v<T, line2d::Normal>)
                return {{"form", "normal"}, {"n", vec_json(f.n)}, {"D", f.d}};
            else if constexpr (std::is_same_v<T, line2d::Canonical>)
                return {{"form", "canonical"},
                        {"x0", f.x0},
                        {"y0", f.y0},
                        {"ax", f.ax},
                        {"ay", f.ay}};
            else if constexpr (std::is_same_v<T, line2d::TwoPoint>)
                return {{"form", "two_point"}, {"p0", vec_json(f.p0)}, {"p1", vec_json(f.p1)}};
            else if constexpr (std::is_same_v<T, line2d::General>)
                return {{"form", "general"}, {"A", f.a}, {"B", f.b}, {"D", f.d}};
            else
                return {{"form", "intercept"}, {"a", f.a}, {"b", f.b}};
        },
        form);
}

json plane_record(const plane::Form& form) {
    return std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, plane::Parametric>)
                return {{"form", "parametric"},
                        {"r0", vec_json(f.r0)},
                        {"a", vec_json(f.a)},
                        {"b", vec_json(f.b)}};
            else if constexpr (std::is_same_v<T, plane::Normal>)
                return {{"form", "normal"}, {"n", vec_json(f.n)}, {"D", f.d}};
            else if constexpr (std::is_same_v<T, plane::Canonical>)
                return {{"form", "canonical"},
                        {"r0", vec_json(f.r0)},
                        {"a", vec_json(f.a)},
                        {"b", vec_json(f.b)}};
            else if constexpr (std::is_same_v<T, plane::ThreePoint>)
                return {{"form", "three_point"},
                        {"p0", vec_json(f.p0)},
                        {"p1", vec_json(f.p1)},
                        {"p2", vec_json(f.p2)}};
            else if constexpr (std::is_same_v<T, plane::General>)
                return {{"form", "general"}, {"A", f.a}, {"B", f.b}, {"C", f.c}, {"D", f.d}};
            else
                return {{"form", "intercept"}, {"a", f.a}, {"b", f.b}, {"c", f.c}};
        },
        form);
}

const char* canonical_case_name(line3d::CanonicalCase c) {
    switch (c) {
        case line3d::CanonicalCase::all_free: return "all_free";
        case line3d::CanonicalCase::x_fixed: return "x_fixed";
        case line3d::CanonicalCase::y_fixed: return "y_fixed";
        case line3d::CanonicalCase::z_fixed: return "z_fixed";
        case line3d::CanonicalCase::xy_fixed: return "xy_fixed";
        case line3d::CanonicalCase::xz_fixed: return "xz_fixed";
        case line3d::CanonicalCase::yz_fixed: return "yz_fixed";
    }
    return "?";
}

json line3d_record(const line3d::Form& form) {
    return std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, line3d::Parametric>)
                return {{"form", "parametric"}, {"r0", vec_json(f.r0)}, {"a", vec_json(f.a)}};
            else if constexpr (std::is_same_v<T, line3d::Vectorial>)
                return {{"form", "vectorial"}, {"a", vec_json(f.a)}, {"b", vec_json(f.b)}};
            else if constexpr (std::is_same_v<T, line3d::Canonical>)
                return {{"form", "canonical"},
                        {"r0", vec_json(f.r0)},
                        {"a", vec_json(f.a)},
                        {"case", canonical_case_name(f.degeneracy)}};
            else if constexpr (std::is_same_v<T, line3d::TwoPoint>)
                return {{"form", "two_point"}, {"p0", vec_json(f.p0)}, {"p1", vec_json(f.p1)}};
            else
                return {{"form", "two_planes"},
                        {"first",
                         {{"A", f.first.a}, {"B", f.first.b}, {"C", f.first.c}, {"D", f.first.d}}},
                        {"second",
                         {{"A", f.second.a},
                          {"B", f.second.b},
                          {"C", f.second.c},
                          {"D", f.second.d}}}};
        },
        form);
}

void print_record_text(const json& rec, std::ostream& out, int indent = 0) {
    for (const auto& [key, value] : rec.items()) {
        out << std::string(indent, ' ') << key << ": ";
        if (value.is_number()) {
            out << num(value.get<Scalar>());
        } else if (value.is_array()) {
            bool first = true;
            for (const auto& item : value) {
                if (!first) out << " ";
                first = false;
                out << (item.is_number() ? num(item.get<Scalar>()) : item.dump());
            }
        } else if (value.is_object()) {
            out << "\n";
            print_record_text(value, out, indent + 2);
            continue;
        } else {
            out << value.get<std::string>();
        }
        out << "\n";
    }
}

line2d::Tag line2d_tag(const std::string& name) {
    if (name == "parametric") return line2d::Tag::parametric;
    if (name == "normal") return line2d::Tag::normal;
    if (name == "canonical") return line2d::Tag::canonical;
    if (name == "two_point") return line2d::Tag::two_point;
    if (name == "general") return line2d::Tag::general;
    if (name == "intercept") return line2d::Tag::intercept;
    throw CLI::ValidationError("unknown line2d form tag: '" + name + "'");
}

plane::Tag plane_tag(const std::string& name) {
    if (name == "parametric") return plane::Tag::parametric;
    if (name == "normal") return plane::Tag::normal;
    if (name == "canonical") return plane::Tag::canonical;
    if (name == "three_point") return plane::Tag::three_point;
    if (name == "general") return plane::Tag::general;
    if (name == "intercept") return plane::Tag::intercept;
    throw CLI::ValidationError("unknown plane form tag: '" + name + "'");
}

line3d::Tag line3d_tag(const std::string& name) {
    if (name == "parametric") return line3d::Tag::parametric;
    if (name == "vectorial") return line3d::Tag::vectorial;
    if (name == "canonical") return line3d::Tag::canonical;
    if (name == "two_point") return line3d::Tag::two_point;
    if (name == "two_planes") return line3d::Tag::two_planes;
    throw CLI::ValidationError("unknown line3d form tag: '" + name + "'");
}

int cmd_convert(const std::string& family, const std::string& from, const std::string& to,
                const std::vector<std::string>& tokens,
                const std::vector<std::string>& basis_tokens, bool as_json, std::ostream& out) {
    Frame f = Frame::reference();
    if (!basis_tokens.empty()) f = frame_from_flat(parse_numbers(basis_tokens, 9, "--basis"));

    json rec;
    if (family == "line2d") {
        const line2d::Tag src_tag = line2d_tag(from);
        line2d::Form src;
        switch (src_tag) {
            case line2d::Tag::parametric: {
                const auto v = parse_numbers(tokens, 4, "parametric line");
                src = line2d::Parametric{{v[0], v[1]}, {v[2], v[3]}};
                break;
            }
            case line2d::Tag::normal: {
                const auto v = parse_numbers(tokens, 3, "normal line");
                src = line2d::Normal{{v[0], v[1]}, v[2]};
                break;
            }
            case line2d::Tag::canonical: {
                const auto v = parse_numbers(tokens, 4, "canonical line");
                src = line2d::Canonical{v[0], v[1], v[2], v[3]};
                break;
            }
            case line2d::Tag::two_point: {
                const auto v = parse_numbers(tokens, 4, "two-point line");
                src = line2d::TwoPoint{{v[0], v[1]}, {v[2], v[3]}};
                break;
            }
            case line2d::Tag::general: {
                const auto v = parse_numbers(tokens, 3, "general line");
                src = line2d::General{v[0], v[1], v[2]};
                break;
            }
            case line2d::Tag::intercept: {
                const auto v = parse_numbers(tokens, 2, "intercept line");
                src = line2d::Intercept{v[0], v[1]};
                break;
            }
        }
        rec = line2d_record(line2d::convert(src, line2d_tag(to), Metric2::from_frame(f)));
    } else if (family == "plane") {
        const plane::Tag src_tag = plane_tag(from);
        plane::Form src;
        switch (src_tag) {
            case plane::Tag::parametric: {
                const auto v = parse_numbers(tokens, 9, "parametric plane");
                src = plane::Parametric{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}};
                break;
            }
            case plane::Tag::normal: {
                const auto v = parse_numbers(tokens, 4, "normal plane");
                src = plane::Normal{{v[0], v[1], v[2]}, v[3]};
                break;
            }
            case plane::Tag::canonical: {
                const auto v = parse_numbers(tokens, 9, "canonical plane");
                src = plane::Canonical{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}};
                break;
            }
            case plane::Tag::three_point: {
                const auto v = parse_numbers(tokens, 9, "three-point plane");
                src = plane::ThreePoint{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}};
                break;
            }
            case plane::Tag::general: {
                const auto v = parse_numbers(tokens, 4, "general plane");
                src = plane::General{v[0], v[1], v[2], v[3]};
                break;
            }
            case plane::Tag::intercept: {
                const auto v = parse_numbers(tokens, 3, "intercept plane");
                src = plane::Intercept{v[0], v[1], v[2]};
                break;
            }
        }
        rec = plane_record(plane::convert(src, plane_tag(to), f));
    } else if (family == "line3d") {
        const line3d::Tag src_tag = line3d_tag(from);
        line3d::Form src;
        switch (src_tag) {
            case line3d::Tag::parametric: {
                const auto v = parse_numbers(tokens, 6, "parametric line");
                src = line3d::Parametric{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
                break;
            }
            case line3d::Tag::vectorial: {
                const auto v = parse_numbers(tokens, 6, "vectorial line");
                src = line3d::Vectorial{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
                break;
            }
            case line3d::Tag::canonical: {
                const auto v = parse_numbers(tokens, 6, "canonical line");
                const Vec3 r0{v[0], v[1], v[2]}, a{v[3], v[4], v[5]};
                src = line3d::Canonical{r0, a, line3d::detail::case_for_direction(a)};
                break;
            }
            case line3d::Tag::two_point: {
                const auto v = parse_numbers(tokens, 6, "two-point line");
                src = line3d::TwoPoint{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
                break;
            }
            case line3d::Tag::two_planes: {
                const auto v = parse_numbers(tokens, 8, "two-planes line");
                src = line3d::TwoPlanes{plane::General{v[0], v[1], v[2], v[3]},
                                        plane::General{v[4], v[5], v[6], v[7]}};
                break;
            }
        }
        rec = line3d_record(line3d::convert(src, line3d_tag(to), f));
    } else {
        throw CLI::ValidationError("unknown conversion family: '" + family + "'");
    }

    if (as_json)
        out << rec.dump() << "\n";
    else
        print_record_text(rec, out);
    return 0;
}

// ---------------------------------------------------------------------------
// conic / quadric

json conic_report_record(const ConicReport& rep) {
    json rec;
    rec["class"] = to_string(rep.cls);
    rec["canonical"] = json::array({rep.canonical.a, rep.canonical.b, rep.canonical.c,
                                    rep.canonical.d, rep.canonical.e, rep.canonical.f});
    // embedded as the z = 0 slice so the record shape matches the quadric one
    rec["rotation"] =
        json::array({rep.rotation(0, 0), rep.rotation(0, 1), 0.0, rep.rotation(1, 0),
                     rep.rotation(1, 1), 0.0, 0.0, 0.0, 1.0});
    rec["translation"] = json::array({rep.translation.x, rep.translation.y, 0.0});
    rec["residual"] = rep.residual;
    return rec;
}

json quadric_report_record(const QuadricReport& rep) {
    json rec;
    rec["class"] = to_string(rep.cls);
    rec["canonical"] =
        json::array({rep.canonical.a, rep.canonical.b, rep.canonical.c, rep.canonical.d,
                     rep.canonical.e, rep.canonical.f, rep.canonical.g, rep.canonical.h,
                     rep.canonical.i, rep.canonical.j});
    json rot = json::array();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rot.push_back(rep.rotation(i, j));
    rec["rotation"] = rot;
    rec["translation"] = json::array({rep.translation.x, rep.translation.y, rep.translation.z});
    rec["residual"] = rep.residual;
    return rec;
}

std::vector<std::vector<Scalar>> rows_from_file(const std::string& path, std::size_t width) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open file: '" + path + "'");
    std::vector<std::vector<Scalar>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        rows.push_back(parse_numbers(tokens, width, "input row"));
    }
    return rows;
}

int cmd_conic_classify(const std::vector<std::string>& tokens, const std::string& file,
                       Scalar tol, bool as_json, std::ostream& out) {
    ClassifyOptions opts;
    if (tol > 0.0) opts.zero_tol = tol;
    std::vector<std::vector<Scalar>> rows;
    if (!file.empty())
        rows = rows_from_file(file, 6);
    else
        rows.push_back(parse_numbers(tokens, 6, "conic coefficients"));
    for (const auto& v : rows) {
        const ConicReport rep = classify_conic({v[0], v[1], v[2], v[3], v[4], v[5]}, opts);
        if (as_json)
            out << conic_report_record(rep).dump() << "\n";
        else if (!file.empty())
            out << to_string(rep.cls) << " residual=" << num(rep.residual) << "\n";
        else
            print_record_text(conic_report_record(rep), out);
    }
    return 0;
}

int cmd_quadric_classify(const std::vector<std::string>& tokens, const std::string& file,
                         Scalar tol, bool as_json, std::ostream& out) {
    ClassifyOptions opts;
    if (tol > 0.0) opts.zero_tol = tol;
    std::vector<std::vector<Scalar>> rows;
    if (!file.empty())
        rows = rows_from_file(file, 10);
    else
        rows.push_back(parse_numbers(tokens, 10, "quadric coefficients"));
    for (const auto& v : rows) {
        const QuadricReport rep = classify_quadric(
            {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]}, opts);
        if (as_json)
            out << quadric_report_record(rep).dump() << "\n";
        else if (!file.empty())
            out << to_string(rep.cls) << " residual=" << num(rep.residual) << "\n";
        else
            print_record_text(quadric_report_record(rep), out);
    }
    return 0;
}

int cmd_conic_params(const std::string& kind, const std::vector<std::string>& tokens,
                     bool as_json, std::ostream& out) {
    json rec;
    if (kind == "ellipse") {
        const auto v = parse_numbers(tokens, 2, "ellipse a c");
        const EllipseParams e = ellipse_from_a_c(v[0], v[1]);
        rec = {{"curve", "ellipse"}, {"a", e.a}, {"b", e.b}, {"c", e.c}, {"eccentricity", e.eps}};
        if (e.d)
            rec["directrix"] = *e.d;
        else
            rec["directrix"] = "undefined";
    } else if (kind == "hyperbola") {
        const auto v = parse_numbers(tokens, 2, "hyperbola a c");
        const HyperbolaParams h = hyperbola_from_a_c(v[0], v[1]);
        rec = {{"curve", "hyperbola"}, {"a", h.a},          {"b", h.b}, {"c", h.c},
               {"eccentricity", h.eps}, {"directrix", h.d}};
    } else if (kind == "parabola") {
        const auto v = parse_numbers(tokens, 1, "parabola p");
        const ParabolaParams p = parabola_from_p(v[0]);
        rec = {{"curve", "parabola"}, {"p", p.p}, {"eccentricity", 1.0},
               {"focus_x", p.p / 2.0}, {"directrix", -p.p / 2.0}};
    } else {
        throw CLI::ValidationError("unknown curve kind: '" + kind + "'");
    }
    if (as_json)
        out << rec.dump() << "\n";
    else
        print_record_text(rec, out);
    return 0;
}

int cmd_conic_tangent(const std::string& kind, const std::vector<std::string>& tokens,
                      bool as_json, std::ostream& out) {
    line2d::General tangent;
    if (kind == "ellipse") {
        const auto v = parse_numbers(tokens, 4, "ellipse a c x0 y0");
        tangent = ellipse_tangent_at(ellipse_from_a_c(v[0], v[1]), v[2], v[3]);
    } else if (kind == "hyperbola") {
        const auto v = parse_numbers(tokens, 4, "hyperbola a c x0 y0");
        tangent = hyperbola_tangent_at(hyperbola_from_a_c(v[0], v[1]), v[2], v[3]);
    } else if (kind == "parabola") {
        const auto v = parse_numbers(tokens, 3, "parabola p x0 y0");
        tangent = parabola_tangent_at(parabola_from_p(v[0]), v[1], v[2]);
    } else {
        throw CLI::ValidationError("unknown curve kind: '" + kind + "'");
    }
    const json rec = line2d_record(line2d::Form{tangent});
    if (as_json)
        out << rec.dump() << "\n";
    else
        print_record_text(rec, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"vector algebra over skew bases and second-order classification"};
    app.fallthrough(false);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit one structured JSON record per input");

    // basis
    auto* basis = app.add_subcommand("basis", "Gram data of a basis given by nine numbers");
    std::vector<std::string> basis_values;
    basis->add_option("values", basis_values, "e1 e2 e3 components, nine numbers");
    basis->add_flag("--json", as_json);

    // product
    auto* product = app.add_subcommand("product", "scalar, vector or mixed product in a basis");
    std::string product_kind;
    std::vector<std::string> product_values, product_basis;
    product->add_option("kind", product_kind, "scalar | vector | mixed")->required();
    product->add_option("values", product_values, "vector components");
    product->add_option("--basis", product_basis, "basis vectors, nine numbers")->expected(9);
    product->add_flag("--json", as_json);

    // identity-check
    auto* identity = app.add_subcommand("identity-check",
                                        "verify the contraction and product identities");
    std::uint64_t seed = 20240801;
    identity->add_option("--seed", seed, "seed for the sampled identities");
    identity->add_flag("--json", as_json);

    // convert
    auto* convert = app.add_subcommand("convert", "convert between equation forms");
    std::string convert_family, convert_from, convert_to;
    std::vector<std::string> convert_values, convert_basis;
    convert->add_option("family", convert_family, "line2d | plane | line3d")->required();
    convert->add_option("--from", convert_from, "source form tag")->required();
    convert->add_option("--to", convert_to, "target form tag")->required();
    convert->add_option("values", convert_values, "source form numbers");
    convert->add_option("--basis", convert_basis, "basis vectors, nine numbers")->expected(9);
    convert->add_flag("--json", as_json);

    // conic
    auto* conic = app.add_subcommand("conic", "conic parameters, tangents, classification");
    conic->require_subcommand(1);
    auto* conic_params = conic->add_subcommand("params", "derived parameters of a curve");
    std::string conic_kind;
    std::vector<std::string> conic_values;
    conic_params->add_option("kind", conic_kind, "ellipse | hyperbola | parabola")->required();
    conic_params->add_option("values", conic_values);
    conic_params->add_flag("--json", as_json);
    auto* conic_tangent = conic->add_subcommand("tangent", "tangent line at a point");
    std::string tangent_kind;
    std::vector<std::string> tangent_values;
    conic_tangent->add_option("kind", tangent_kind, "ellipse | hyperbola | parabola")->required();
    conic_tangent->add_option("values", tangent_values);
    conic_tangent->add_flag("--json", as_json);
    auto* conic_classify = conic->add_subcommand("classify", "classify A B C D E F");
    std::vector<std::string> conic_coeffs;
    std::string conic_file;
    Scalar conic_tol = -1.0;
    conic_classify->add_option("values", conic_coeffs, "six coefficients");
    conic_classify->add_option("--file", conic_file, "batch rows, six numbers per line");
    conic_classify->add_option("--tol", conic_tol, "classifier zero threshold");
    conic_classify->add_flag("--json", as_json);

    // quadric
    auto* quadric = app.add_subcommand("quadric", "surface classification");
    quadric->require_subcommand(1);
    auto* quadric_classify = quadric->add_subcommand("classify", "classify A B C D E F G H I J");
    std::vector<std::string> quadric_coeffs;
    std::string quadric_file;
    Scalar quadric_tol = -1.0;
    quadric_classify->add_option("values", quadric_coeffs, "ten coefficients");
    quadric_classify->add_option("--file", quadric_file, "batch rows, ten numbers per line");
    quadric_classify->add_option("--tol", quadric_tol, "classifier zero threshold");
    quadric_classify->add_flag("--json", as_json);

    app.require_subcommand(1);

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(basis)) return cmd_basis(basis_values, as_json, out);
        if (app.got_subcommand(product))
            return cmd_product(product_kind, product_values, product_basis, as_json, out);
        if (app.got_subcommand(identity)) return cmd_identity_check(seed, as_json, out);
        if (app.got_subcommand(convert))
            return cmd_convert(convert_family, convert_from, convert_to, convert_values,
                               convert_basis, as_json, out);
        if (app.got_subcommand(conic)) {
            if (conic->got_subcommand(conic_params))
                return cmd_conic_params(conic_kind, conic_values, as_json, out);
            if (conic->got_subcommand(conic_tangent))
                return cmd_conic_tangent(tangent_kind, tangent_values, as_json, out);
            return cmd_conic_classify(conic_coeffs, conic_file, conic_tol, as_json, out);
        }
        if (app.got_subcommand(quadric))
            return cmd_quadric_classify(quadric_coeffs, quadric_file, quadric_tol, as_json, out);
    } catch (const ParseFailure& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const KernelError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace skewgeom::cli
