#include "phifrac/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include "phifrac/error.hpp"
#include "phifrac/point_csv.hpp"

namespace phifrac::config {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    fail(ErrorKind::InvalidInput, "config field '" + path + "': " + what);
}

/// Re-labels library validation failures with the config path.
template <class Fn>
auto at_path(const std::string& path, Fn fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::InvalidParameter ||
            e.kind() == ErrorKind::InvalidStage) {
            const std::string msg = e.what();
            if (msg.rfind("config field", 0) == 0) throw;
            throw Error(e.kind(), "config field '" + path + "': " + msg);
        }
        throw;
    }
}

const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array");
    return j;
}

Point point(const Json& j, const std::string& path) {
    array(j, path);
    std::vector<double> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return at_path(path, [&] { return Point(std::span<const double>(c)); });
}

} // namespace

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) bad(path.empty() ? "<root>" : path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) bad(join(path, key), "missing");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) bad(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) bad(path, "must be finite");
    return v;
}

std::string text(const Json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
}

ComparisonFunction parse_phi(const Json& j, const std::string& path) {
    const std::string family = text(field(j, "family", path), join(path, "family"));
    const auto& params = array(field(j, "params", path), join(path, "params"));
    std::vector<double> p;
    for (std::size_t i = 0; i < params.size(); ++i)
        p.push_back(number(params[i], join(path, "params") + "[" + std::to_string(i) + "]"));
    const auto want = [&](std::size_t n) {
        if (p.size() != n)
            bad(join(path, "params"), family + " takes " + std::to_string(n) + " parameter(s)");
    };
    return at_path(join(path, "params"), [&] {
        if (family == "linear") {
            want(1);
            return ComparisonFunction::linear(p[0]);
        }
        if (family == "ratio_shift") {
            want(1);
            return ComparisonFunction::ratio_shift(p[0]);
        }
        if (family == "rakotch") {
            want(2);
            return ComparisonFunction::rakotch_rational(p[0], p[1]);
        }
        bad(join(path, "family"), "unknown family '" + family + "'");
    });
}

Json to_json(const ComparisonFunction& phi) {
    return Json{{"family", phi.family()}, {"params", phi.params()}};
}

Box parse_box(const Json& j, const std::string& path) {
    const Point lo = point(field(j, "lo", path), join(path, "lo"));
    const Point hi = point(field(j, "hi", path), join(path, "hi"));
    return at_path(path, [&] { return Box(lo, hi); });
}

Json to_json(const Box& box) {
    std::vector<double> lo(box.lo().coords().begin(), box.lo().coords().end());
    std::vector<double> hi(box.hi().coords().begin(), box.hi().coords().end());
    return Json{{"lo", lo}, {"hi", hi}};
}

ContractiveMap parse_map(const Json& j, const Box& domain, const std::string& path) {
    const std::string kind = text(field(j, "kind", path), join(path, "kind"));
    std::optional<ComparisonFunction> phi;
    if (j.contains("phi")) phi = parse_phi(j["phi"], join(path, "phi"));
    return at_path(path, [&] {
        if (kind == "affine1d")
            return ContractiveMap::affine1d(number(field(j, "a", path), join(path, "a")),
                                            number(field(j, "b", path), join(path, "b")), domain,
                                            phi);
        if (kind == "affine2d") {
            const auto& m = array(field(j, "matrix", path), join(path, "matrix"));
            if (m.size() != 2) bad(join(path, "matrix"), "expected 2 rows");
            std::array<double, 4> mm{};
            for (std::size_t r = 0; r < 2; ++r) {
                const std::string rp = join(path, "matrix") + "[" + std::to_string(r) + "]";
                array(m[r], rp);
                if (m[r].size() != 2) bad(rp, "expected 2 columns");
                for (std::size_t c = 0; c < 2; ++c)
                    mm[2 * r + c] = number(m[r][c], rp + "[" + std::to_string(c) + "]");
            }
            const Point v = point(field(j, "shift", path), join(path, "shift"));
            if (v.dim() != 2) bad(join(path, "shift"), "expected 2 components");
            return ContractiveMap::affine2d(mm, {v[0], v[1]}, domain, phi);
        }
        if (kind == "reciprocal") return ContractiveMap::reciprocal(domain, phi);
        if (kind == "mobius") return ContractiveMap::mobius(domain, phi);
        bad(join(path, "kind"), "unknown map kind '" + kind + "'");
    });
}

template <class T, class ParseItem>
IndexedFamily<T> parse_family(const Json& j, const std::string& path, ParseItem parse_item) {
    const auto list = [&](const Json& arr, const std::string& p) {
        array(arr, p);
        std::vector<T> out;
        for (std::size_t i = 0; i < arr.size(); ++i)
            out.push_back(parse_item(arr[i], p + "[" + std::to_string(i) + "]"));
        return out;
    };
    if (j.is_array()) {
        auto items = list(j, path);
        if (items.empty()) bad(path, "must be nonempty");
        return IndexedFamily<T>::periodic({}, std::move(items));
    }
    std::vector<T> prefix;
    if (j.contains("prefix")) prefix = list(j["prefix"], join(path, "prefix"));
    const auto& tail = field(j, "tail", path);
    const std::string tp = join(path, "tail");
    auto repeat = list(field(tail, "repeat", tp), join(tp, "repeat"));
    if (repeat.empty()) bad(join(tp, "repeat"), "must be nonempty");
    return IndexedFamily<T>::periodic(std::move(prefix), std::move(repeat));
}

ComparisonChain parse_chain(const Json& j, const std::string& path) {
    return parse_family<ComparisonFunction>(j, path, parse_phi);
}

MapSequence parse_map_sequence(const Json& j, const Box& domain, const std::string& path) {
    auto fam = parse_family<ContractiveMap>(
        j, path, [&](const Json& m, const std::string& p) { return parse_map(m, domain, p); });
    return at_path(path, [&] { return MapSequence(std::move(fam)); });
}

FunctionSystem parse_system(const Json& j, const Box& domain, const std::string& path) {
    const auto& maps = array(field(j, "maps", path), join(path, "maps"));
    std::vector<ContractiveMap> out;
    for (std::size_t i = 0; i < maps.size(); ++i)
        out.push_back(parse_map(maps[i], domain, join(path, "maps") + "[" + std::to_string(i) + "]"));
    return at_path(path, [&] { return FunctionSystem(std::move(out)); });
}

SfsSequence parse_sfs(const Json& j, const Box& domain, const std::string& path) {
    auto fam = parse_family<FunctionSystem>(
        j, path, [&](const Json& s, const std::string& p) { return parse_system(s, domain, p); });
    return at_path(path, [&] { return SfsSequence(std::move(fam)); });
}

CifsSystem parse_cifs(const Json& j, const Box& domain, const std::string& path) {
    const std::string kind = text(field(j, "kind", path), join(path, "kind"));
    if (kind != "affine1d_geometric") bad(join(path, "kind"), "unknown generator '" + kind + "'");
    const double a0 = number(field(j, "a0", path), join(path, "a0"));
    const double ar = number(field(j, "a_ratio", path), join(path, "a_ratio"));
    const double b0 = number(field(j, "b0", path), join(path, "b0"));
    const double br = number(field(j, "b_ratio", path), join(path, "b_ratio"));
    if (!(std::abs(ar) <= 1.0)) bad(join(path, "a_ratio"), "must satisfy |a_ratio| <= 1");
    const auto phi = j.contains("phi") ? parse_phi(j["phi"], join(path, "phi"))
                                       : at_path(join(path, "a0"), [&] {
                                             return ComparisonFunction::linear(std::abs(a0));
                                         });
    auto gen = [=](std::size_t i) {
        const double e = static_cast<double>(i - 1);
        return ContractiveMap::affine1d(a0 * std::pow(ar, e), b0 * std::pow(br, e), domain, phi);
    };
    at_path(path, [&] { return gen(1); });
    return CifsSystem(gen, phi, domain);
}

CompactSet parse_initial_set(const Json& j, const Box& domain,
                             const std::filesystem::path& base_dir, const std::string& path) {
    if (j.contains("points")) {
        const std::string pp = join(path, "points");
        const auto& pts = array(j["points"], pp);
        std::vector<Point> out;
        for (std::size_t i = 0; i < pts.size(); ++i)
            out.push_back(point(pts[i], pp + "[" + std::to_string(i) + "]"));
        return at_path(pp, [&] { return CompactSet(std::move(out)); });
    }
    if (j.contains("sample")) {
        const std::string sp = join(path, "sample");
        const auto& s = j["sample"];
        const double pitch = number(field(s, "pitch", sp), join(sp, "pitch"));
        if (!(pitch > 0.0)) bad(join(sp, "pitch"), "must be > 0");
        const Box box = s.contains("box") ? parse_box(s["box"], join(sp, "box")) : domain;
        return at_path(sp, [&] { return CompactSet::sample_box(box, pitch); });
    }
    if (j.contains("csv")) {
        const std::string cp = join(path, "csv");
        return at_path(cp, [&] { return read_point_csv(base_dir / text(j["csv"], cp)); });
    }
    bad(path, "expected one of 'points', 'sample', 'csv'");
}

std::shared_ptr<const InterpolationData> parse_data(const Json& root,
                                                    const std::filesystem::path& base_dir) {
    std::vector<std::pair<double, double>> nodes;
    if (root.contains("data")) {
        const auto& d = array(root["data"], "data");
        for (std::size_t i = 0; i < d.size(); ++i) {
            const std::string p = "data[" + std::to_string(i) + "]";
            array(d[i], p);
            if (d[i].size() != 2) bad(p, "expected [x, y]");
            nodes.emplace_back(number(d[i][0], p + "[0]"), number(d[i][1], p + "[1]"));
        }
    } else if (root.contains("data_csv")) {
        const auto file = base_dir / text(root["data_csv"], "data_csv");
        std::ifstream in(file);
        if (!in) bad("data_csv", "cannot open " + file.string());
        const auto rows = at_path("data_csv", [&] { return read_csv_rows(in); });
        for (const auto& r : rows) {
            if (r.size() != 2) bad("data_csv", "expected (x, y) rows");
            nodes.emplace_back(r[0], r[1]);
        }
    } else {
        bad("data", "missing (or give 'data_csv')");
    }
    std::optional<std::pair<double, double>> range;
    if (root.contains("range")) {
        const auto& r = array(root["range"], "range");
        if (r.size() != 2) bad("range", "expected [a, b]");
        range.emplace(number(r[0], "range[0]"), number(r[1], "range[1]"));
    }
    return at_path("data", [&] {
        return std::make_shared<const InterpolationData>(InterpolationData::make(nodes, range));
    });
}

namespace {

VerticalMap parse_vertical(const Json& j, const std::string& path) {
    const std::string kind = text(field(j, "vertical", path), join(path, "vertical"));
    return at_path(path, [&] {
        if (kind == "scale") return VerticalMap::scale(number(field(j, "s", path), join(path, "s")));
        if (kind == "mobius") return VerticalMap::mobius();
        bad(join(path, "vertical"), "unknown vertical map '" + kind + "'");
    });
}

} // namespace

FifOperatorStage parse_stage(const Json& j, std::shared_ptr<const InterpolationData> data,
                             const std::string& path) {
    std::vector<VerticalMap> verticals;
    if (j.contains("verticals")) {
        const std::string vp = join(path, "verticals");
        const auto& vs = array(j["verticals"], vp);
        for (std::size_t i = 0; i < vs.size(); ++i)
            verticals.push_back(parse_vertical(vs[i], vp + "[" + std::to_string(i) + "]"));
    } else {
        verticals.push_back(parse_vertical(j, path));
    }
    return at_path(path, [&] { return FifOperatorStage::pinned(data, std::move(verticals)); });
}

StageSchedule parse_schedule(const Json& j, std::shared_ptr<const InterpolationData> data,
                             const std::string& path) {
    return parse_family<FifOperatorStage>(
        j, path, [&](const Json& s, const std::string& p) { return parse_stage(s, data, p); });
}

} // namespace phifrac::config
