#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "diffn/diff_object.hpp"

namespace diffn {

// Runtime dispatch over the two coefficient fields, used by the file
// formats, the CLI and the Python bindings.
using AnyObject = std::variant<DiffObject<GFp>, DiffObject<RatField>>;
using AnyMorphism = std::variant<DiffMorphism<GFp>, DiffMorphism<RatField>>;
using AnySes = std::variant<ShortExactSeq<GFp>, ShortExactSeq<RatField>>;

template <class F>
std::string matrix_lines(const Matrix<F>& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += m.field().to_string(m.at(i, j));
        }
        out += '\n';
    }
    return out;
}

// DFN-1 text formats.
template <class F>
std::string object_to_dfn(const DiffObject<F>& x) {
    std::string out = "dfn-object v1 field=" + x.field().spec().name() + " n=" + std::to_string(x.n()) +
                      " dim=" + std::to_string(x.dim()) + "\n";
    return out + matrix_lines(x.eps());
}

template <class F>
std::string morphism_to_dfn(const DiffMorphism<F>& f, const std::string& src_path, const std::string& dst_path) {
    std::string out = "dfn-morphism v1 field=" + f.src().field().spec().name() +
                      " n=" + std::to_string(f.src().n()) + " rows=" + std::to_string(f.mat().rows()) +
                      " cols=" + std::to_string(f.mat().cols()) + "\n";
    out += "src=" + src_path + "\n";
    out += "dst=" + dst_path + "\n";
    return out + matrix_lines(f.mat());
}

inline std::string ses_to_dfn(const std::string& i_path, const std::string& p_path) {
    return "dfn-ses v1\ni=" + i_path + "\np=" + p_path + "\n";
}

std::string object_to_dfn(const AnyObject& x);

AnyObject parse_object_text(const std::string& text, const std::string& origin);
AnyObject load_object(const std::filesystem::path& path);
AnyMorphism load_morphism(const std::filesystem::path& path);
AnySes load_ses(const std::filesystem::path& path);

// Kind of a DFN file from its header line: "object", "morphism" or "ses".
std::string dfn_kind(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace diffn
