#include "diffn/io.hpp"

#include <fstream>
#include <sstream>

namespace diffn {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// key=value tokens after the "dfn-xxx v1" prefix
std::string header_value(const std::vector<std::string>& toks, const std::string& key, const std::string& origin) {
    for (std::size_t i = 2; i < toks.size(); ++i)
        if (toks[i].rfind(key + "=", 0) == 0) return toks[i].substr(key.size() + 1);
    throw InputError(origin + ": missing header field '" + key + "'");
}

std::size_t parse_count(const std::string& text, const std::string& origin) {
    if (text.empty()) throw InputError(origin + ": empty count");
    std::size_t v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw InputError(origin + ": bad count '" + text + "'");
        v = v * 10 + static_cast<std::size_t>(c - '0');
        if (v > 100000) throw InputError(origin + ": count out of range '" + text + "'");
    }
    return v;
}

struct Lines {
    std::vector<std::string> lines;
    std::size_t next = 0;
    std::string origin;

    std::string take(const std::string& what) {
        while (next < lines.size() && split_ws(lines[next]).empty()) ++next;
        if (next >= lines.size()) throw InputError(origin + ": unexpected end of file, expected " + what);
        return lines[next++];
    }
};

Lines read_lines(const std::string& text, const std::string& origin) {
    Lines out;
    out.origin = origin;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.lines.push_back(line);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <class F>
Matrix<F> parse_matrix(const F& field, std::size_t rows, std::size_t cols, Lines& src) {
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        auto toks = split_ws(src.take("matrix row"));
        if (toks.size() != cols)
            throw InputError(src.origin + ": expected " + std::to_string(cols) + " entries, got " +
                             std::to_string(toks.size()));
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = field.parse(toks[j]);
    }
    return m;
}

std::string keyed_line(Lines& src, const std::string& key) {
    std::string line = src.take("'" + key + "=' line");
    if (line.rfind(key + "=", 0) != 0) throw InputError(src.origin + ": expected '" + key + "=<path>' line");
    return line.substr(key.size() + 1);
}

template <class F>
DiffObject<F> parse_object_body(const F& field, int n, std::size_t dim, Lines& src) {
    return DiffObject<F>(field, n, parse_matrix(field, dim, dim, src));
}

}  // namespace

std::string object_to_dfn(const AnyObject& x) {
    return std::visit([](const auto& obj) { return object_to_dfn(obj); }, x);
}

AnyObject parse_object_text(const std::string& text, const std::string& origin) {
    Lines src = read_lines(text, origin);
    auto toks = split_ws(src.take("header"));
    if (toks.size() < 2 || toks[0] != "dfn-object" || toks[1] != "v1")
        throw InputError(origin + ": not a dfn-object v1 file");
    FieldSpec spec = FieldSpec::parse(header_value(toks, "field", origin));
    int n = static_cast<int>(parse_count(header_value(toks, "n", origin), origin));
    std::size_t dim = parse_count(header_value(toks, "dim", origin), origin);
    if (spec.kind == FieldSpec::Kind::Rationals) return parse_object_body(RatField(), n, dim, src);
    return parse_object_body(GFp(spec), n, dim, src);
}

AnyObject load_object(const std::filesystem::path& path) {
    return parse_object_text(read_file(path), path.string());
}

AnyMorphism load_morphism(const std::filesystem::path& path) {
    const std::string origin = path.string();
    Lines src = read_lines(read_file(path), origin);
    auto toks = split_ws(src.take("header"));
    if (toks.size() < 2 || toks[0] != "dfn-morphism" || toks[1] != "v1")
        throw InputError(origin + ": not a dfn-morphism v1 file");
    FieldSpec spec = FieldSpec::parse(header_value(toks, "field", origin));
    int n = static_cast<int>(parse_count(header_value(toks, "n", origin), origin));
    std::size_t rows = parse_count(header_value(toks, "rows", origin), origin);
    std::size_t cols = parse_count(header_value(toks, "cols", origin), origin);

    // src/dst object paths are resolved relative to the morphism file
    auto resolve = [&](const std::string& rel) {
        std::filesystem::path p(rel);
        return p.is_absolute() ? p : path.parent_path() / p;
    };
    AnyObject src_obj = load_object(resolve(keyed_line(src, "src")));
    AnyObject dst_obj = load_object(resolve(keyed_line(src, "dst")));

    return std::visit(
        [&](auto&& so) -> AnyMorphism {
            using F = typename std::decay_t<decltype(so)>::field_type;
            auto* dst = std::get_if<DiffObject<F>>(&dst_obj);
            if (!dst || !(so.field() == dst->field()))
                throw InputError(origin + ": src and dst objects live over different fields");
            if (!(so.field().spec() == spec)) throw InputError(origin + ": field mismatch with endpoint objects");
            if (so.n() != n || dst->n() != n) throw InputError(origin + ": n mismatch with endpoint objects");
            if (rows != dst->dim() || cols != so.dim())
                throw InputError(origin + ": rows/cols do not match endpoint dimensions");
            Matrix<F> m = parse_matrix(so.field(), rows, cols, src);
            return DiffMorphism<F>(so, *dst, std::move(m));
        },
        std::move(src_obj));
}

AnySes load_ses(const std::filesystem::path& path) {
    const std::string origin = path.string();
    Lines src = read_lines(read_file(path), origin);
    auto toks = split_ws(src.take("header"));
    if (toks.size() < 2 || toks[0] != "dfn-ses" || toks[1] != "v1")
        throw InputError(origin + ": not a dfn-ses v1 file");
    auto resolve = [&](const std::string& rel) {
        std::filesystem::path p(rel);
        return p.is_absolute() ? p : path.parent_path() / p;
    };
    AnyMorphism i = load_morphism(resolve(keyed_line(src, "i")));
    AnyMorphism p = load_morphism(resolve(keyed_line(src, "p")));
    return std::visit(
        [&](auto&& im) -> AnySes {
            using F = typename std::decay_t<decltype(im)>::field_type;
            auto* pm = std::get_if<DiffMorphism<F>>(&p);
            if (!pm) throw InputError(origin + ": i and p live over different fields");
            return ShortExactSeq<F>(std::move(im), *pm);
        },
        std::move(i));
}

std::string dfn_kind(const std::filesystem::path& path) {
    Lines src = read_lines(read_file(path), path.string());
    auto toks = split_ws(src.take("header"));
    if (toks.size() >= 2 && toks[1] == "v1") {
        if (toks[0] == "dfn-object") return "object";
        if (toks[0] == "dfn-morphism") return "morphism";
        if (toks[0] == "dfn-ses") return "ses";
    }
    throw InputError(path.string() + ": unrecognised DFN header");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << text;
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace diffn
