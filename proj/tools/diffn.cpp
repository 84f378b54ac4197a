// diffn: exact computations with n-th differential modules over GF(p) and Q.
// Exit codes: 0 success/true, 1 false/negative verdict, 2 input error,
// 3 internal invariant failure.

#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "diffn/derived.hpp"
#include "diffn/io.hpp"
#include "diffn/verify.hpp"

namespace {

using namespace diffn;

template <class T, class V>
std::pair<T, T> same_field_pair(V&& a, V&& b, const std::string& what) {
    auto* pa = std::get_if<T>(&a);
    auto* pb = std::get_if<T>(&b);
    if (!pa || !pb) throw InputError(what + " live over different fields");
    return {std::move(*pa), std::move(*pb)};
}

int cmd_validate(const std::string& file) {
    std::string kind = dfn_kind(file);
    if (kind == "object") {
        auto obj = load_object(file);
        std::visit(
            [&](const auto& x) {
                std::cout << "ok object field=" << x.field().spec().name() << " n=" << x.n() << " dim=" << x.dim()
                          << "\n";
            },
            obj);
    } else if (kind == "morphism") {
        auto mor = load_morphism(file);
        std::visit(
            [&](const auto& f) {
                std::cout << "ok morphism field=" << f.src().field().spec().name() << " n=" << f.src().n()
                          << " rows=" << f.mat().rows() << " cols=" << f.mat().cols() << "\n";
            },
            mor);
    } else {
        auto ses = load_ses(file);
        std::visit(
            [&](const auto& s) {
                std::cout << "ok ses dims=" << s.i.src().dim() << "," << s.i.dst().dim() << "," << s.p.dst().dim()
                          << "\n";
            },
            ses);
    }
    return 0;
}

int cmd_jordan(const std::string& file) {
    auto obj = load_object(file);
    std::visit(
        [&](const auto& x) {
            std::cout << "jordan " << jordan_type(x).to_string() << " dim=" << x.dim()
                      << " projective=" << (is_projective(x) ? "yes" : "no") << "\n";
        },
        obj);
    return 0;
}

int cmd_homology(const std::string& file, const std::string& rspec) {
    auto obj = load_object(file);
    return std::visit(
        [&](const auto& x) {
            std::vector<int> rs;
            if (rspec == "all")
                for (int r = 1; r < x.n(); ++r) rs.push_back(r);
            else
                rs.push_back(static_cast<int>(std::stol(rspec)));
            for (int r : rs) {
                auto h = homology(x, r);
                std::cout << "r=" << r << " dim=" << h.dim << " ker=" << h.ker.dim() << " im=" << h.im.dim() << "\n";
            }
            return 0;
        },
        obj);
}

template <class F>
int report_homotopic(const DiffMorphism<F>& a, const DiffMorphism<F>& b) {
    if (homotopic(a, b)) {
        std::cout << "HOMOTOPIC\n";
        return 0;
    }
    std::cout << "NOT HOMOTOPIC\n";
    return 1;
}

int cmd_homotopic(const std::string& file_a, const std::string& file_b) {
    auto ma = load_morphism(file_a);
    auto mb = load_morphism(file_b);
    if (std::holds_alternative<DiffMorphism<GFp>>(ma)) {
        auto [a, b] = same_field_pair<DiffMorphism<GFp>>(std::move(ma), std::move(mb), "morphisms");
        return report_homotopic(a, b);
    }
    auto [a, b] = same_field_pair<DiffMorphism<RatField>>(std::move(ma), std::move(mb), "morphisms");
    return report_homotopic(a, b);
}

int cmd_nullhomotopy(const std::string& file) {
    auto mor = load_morphism(file);
    return std::visit(
        [&](const auto& f) {
            auto s = null_homotopy_witness(f);
            if (!s) {
                std::cout << "NONE\n";
                return 1;
            }
            std::cout << "witness rows=" << s->rows() << " cols=" << s->cols() << "\n" << matrix_lines(*s);
            return 0;
        },
        mor);
}

int cmd_cone(const std::string& file, const std::string& prefix) {
    auto mor = load_morphism(file);
    std::visit(
        [&](const auto& f) {
            auto tri = cone(f);
            std::filesystem::path base(prefix);
            auto name = [&](const char* suffix) { return base.filename().string() + suffix; };
            write_text_file(prefix + std::string(".y.dfn"), object_to_dfn(f.dst()));
            write_text_file(prefix + std::string(".cone.dfn"), object_to_dfn(tri.cone_object()));
            write_text_file(prefix + std::string(".shift.dfn"), object_to_dfn(tri.v.dst()));
            write_text_file(prefix + std::string(".u.dfn"),
                            morphism_to_dfn(tri.u, name(".y.dfn"), name(".cone.dfn")));
            write_text_file(prefix + std::string(".v.dfn"),
                            morphism_to_dfn(tri.v, name(".cone.dfn"), name(".shift.dfn")));
            std::cout << "wrote " << prefix << ".{y,cone,shift,u,v}.dfn cone-dim=" << tri.cone_object().dim() << "\n";
        },
        mor);
    return 0;
}

int cmd_shift(const std::string& file, bool inverse, const std::string& out) {
    auto obj = load_object(file);
    std::visit(
        [&](const auto& x) {
            auto shifted = inverse ? coshift(x) : shift(x);
            write_text_file(out, object_to_dfn(shifted));
            std::cout << "wrote " << out << " dim=" << shifted.dim() << "\n";
        },
        obj);
    return 0;
}

int cmd_qiso(const std::string& file) {
    auto mor = load_morphism(file);
    return std::visit(
        [&](const auto& f) {
            auto v = is_quasi_iso(f);
            for (const auto& pr : v.per_r)
                std::cout << "r=" << pr.r << " invertible=" << (pr.invertible ? "yes" : "no") << "\n";
            std::cout << "cone-acyclic=" << (v.cone_acyclic ? "yes" : "no") << "\n";
            std::cout << (v.is_qiso ? "QUASI-ISOMORPHISM" : "NOT A QUASI-ISOMORPHISM") << "\n";
            return v.is_qiso ? 0 : 1;
        },
        mor);
}

int cmd_les(const std::string& file, int r) {
    auto ses = load_ses(file);
    return std::visit(
        [&](const auto& s) {
            auto w = les(s, r);
            std::cout << "H(" << w.r << "): A=" << w.a_r.dim << " B=" << w.b_r.dim << " C=" << w.c_r.dim << "\n";
            std::cout << "H(" << s.i.src().n() - w.r << "): A=" << w.a_nr.dim << " B=" << w.b_nr.dim
                      << " C=" << w.c_nr.dim << "\n";
            std::cout << "connecting rows=" << w.delta_r.rows() << " cols=" << w.delta_r.cols() << "\n"
                      << matrix_lines(w.delta_r);
            const char* joints[] = {"A_r", "B_r", "C_r", "A_nr", "B_nr", "C_nr"};
            for (int j = 0; j < 6; ++j)
                std::cout << "exact at " << joints[j] << ": " << (w.exact_at[static_cast<std::size_t>(j)] ? "yes" : "no")
                          << "\n";
            std::cout << (w.all_exact() ? "EXACT" : "NOT EXACT") << "\n";
            return w.all_exact() ? 0 : 1;
        },
        ses);
}

int cmd_homdim(const std::string& file_x, const std::string& file_y, bool derived) {
    auto ox = load_object(file_x);
    auto oy = load_object(file_y);
    if (std::holds_alternative<DiffObject<GFp>>(ox)) {
        auto [x, y] = same_field_pair<DiffObject<GFp>>(std::move(ox), std::move(oy), "objects");
        std::cout << (derived ? "derived-hom-dim=" : "hom-k-dim=") << (derived ? derived_hom_dim(x, y) : hom_k_dim(x, y))
                  << "\n";
    } else {
        auto [x, y] = same_field_pair<DiffObject<RatField>>(std::move(ox), std::move(oy), "objects");
        std::cout << (derived ? "derived-hom-dim=" : "hom-k-dim=") << (derived ? derived_hom_dim(x, y) : hom_k_dim(x, y))
                  << "\n";
    }
    return 0;
}

int cmd_minimal(const std::string& file, const std::string& out) {
    auto obj = load_object(file);
    std::visit(
        [&](const auto& x) {
            auto mm = minimal_model(x);
            write_text_file(out, object_to_dfn(mm.reduced));
            std::cout << "wrote " << out << " reduced-dim=" << mm.reduced.dim() << " free-rank=" << mm.free_rank
                      << " type=" << mm.reduced.type().to_string() << "\n";
        },
        obj);
    return 0;
}

int cmd_theta(const std::string& file, int i) {
    auto obj = load_object(file);
    return std::visit(
        [&](const auto& x) {
            auto th = theta_check(x, i);
            std::cout << "dim-hom-k=" << th.dim_hom_k << " dim-homology=" << th.dim_homology
                      << " bijective=" << (th.bijective ? "yes" : "no") << "\n";
            if (!th.bijective) throw InternalError("theta failed to be a bijection");
            return 0;
        },
        obj);
}

int cmd_verify(std::uint64_t seed, std::size_t trials, const std::string& field, int n, std::size_t max_dim,
               const std::string& only, bool list) {
    if (list) {
        for (const auto& name : verify_property_names()) std::cout << name << "\n";
        return 0;
    }
    GenConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.field = FieldSpec::parse(field);
    cfg.n = n;
    cfg.max_dim = max_dim;
    VerifyReport report = run_verify(cfg, only.empty() ? std::nullopt : std::optional<std::string>(only));
    std::cout << report.body();
    std::cerr << report.timings();
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact n-th differential modules over GF(p) and Q"};
    app.require_subcommand(1);
    std::function<int()> action;

    std::string file_a, file_b, out, rspec = "all", field = "Q", only;
    bool inverse = false, derived = false, list = false;
    int r = 1, idx = 1, n = 2;
    std::uint64_t seed = 0;
    std::size_t trials = 100, max_dim = 6;

    auto* validate = app.add_subcommand("validate", "parse a DFN file and check its invariants");
    validate->add_option("file", file_a)->required();
    validate->callback([&] { action = [&] { return cmd_validate(file_a); }; });

    auto* jordan = app.add_subcommand("jordan", "print the Jordan type of an object");
    jordan->add_option("object", file_a)->required();
    jordan->callback([&] { action = [&] { return cmd_jordan(file_a); }; });

    auto* homology_cmd = app.add_subcommand("homology", "print homology dimensions");
    homology_cmd->add_option("object", file_a)->required();
    homology_cmd->add_option("--r", rspec, "index in 1..n-1, or 'all'");
    homology_cmd->callback([&] { action = [&] { return cmd_homology(file_a, rspec); }; });

    auto* homotopic_cmd = app.add_subcommand("homotopic", "are two morphisms homotopic?");
    homotopic_cmd->add_option("morA", file_a)->required();
    homotopic_cmd->add_option("morB", file_b)->required();
    homotopic_cmd->callback([&] { action = [&] { return cmd_homotopic(file_a, file_b); }; });

    auto* nullh = app.add_subcommand("nullhomotopy", "print a null-homotopy witness or NONE");
    nullh->add_option("mor", file_a)->required();
    nullh->callback([&] { action = [&] { return cmd_nullhomotopy(file_a); }; });

    auto* cone_cmd = app.add_subcommand("cone", "write the standard triangle of a morphism");
    cone_cmd->add_option("mor", file_a)->required();
    cone_cmd->add_option("--out", out, "output path prefix")->required();
    cone_cmd->callback([&] { action = [&] { return cmd_cone(file_a, out); }; });

    auto* shift_cmd = app.add_subcommand("shift", "write the shift (or inverse shift) of an object");
    shift_cmd->add_option("object", file_a)->required();
    shift_cmd->add_flag("--inverse", inverse);
    shift_cmd->add_option("--out", out)->required();
    shift_cmd->callback([&] { action = [&] { return cmd_shift(file_a, inverse, out); }; });

    auto* qiso_cmd = app.add_subcommand("qiso", "is a morphism a quasi-isomorphism?");
    qiso_cmd->add_option("mor", file_a)->required();
    qiso_cmd->callback([&] { action = [&] { return cmd_qiso(file_a); }; });

    auto* les_cmd = app.add_subcommand("les", "six-term homology window of a short exact sequence");
    les_cmd->add_option("ses", file_a)->required();
    les_cmd->add_option("--r", r)->required();
    les_cmd->callback([&] { action = [&] { return cmd_les(file_a, r); }; });

    auto* homdim_cmd = app.add_subcommand("homdim", "dimension of the homotopy (or derived) Hom space");
    homdim_cmd->add_option("objX", file_a)->required();
    homdim_cmd->add_option("objY", file_b)->required();
    homdim_cmd->add_flag("--derived", derived);
    homdim_cmd->callback([&] { action = [&] { return cmd_homdim(file_a, file_b, derived); }; });

    auto* minimal_cmd = app.add_subcommand("minimal", "write the minimal model of an object");
    minimal_cmd->add_option("object", file_a)->required();
    minimal_cmd->add_option("--out", out)->required();
    minimal_cmd->callback([&] { action = [&] { return cmd_minimal(file_a, out); }; });

    auto* theta_cmd = app.add_subcommand("theta", "compare generator homs with homology");
    theta_cmd->add_option("object", file_a)->required();
    theta_cmd->add_option("--i", idx)->required();
    theta_cmd->callback([&] { action = [&] { return cmd_theta(file_a, idx); }; });

    auto* verify_cmd = app.add_subcommand("verify", "run the seeded property suite");
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--trials", trials);
    verify_cmd->add_option("--field", field, "prime p or Q");
    verify_cmd->add_option("--n", n);
    verify_cmd->add_option("--max-dim", max_dim);
    verify_cmd->add_option("--only", only, "run a single property");
    verify_cmd->add_flag("--list", list, "list property names and exit");
    verify_cmd->callback([&] { action = [&] { return cmd_verify(seed, trials, field, n, max_dim, only, list); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const diffn::InputError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const diffn::InternalError& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
