#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "diffn/generators.hpp"
#include "diffn/io.hpp"
#include "diffn/verify.hpp"

using namespace diffn;

TEST_CASE("prng streams are reproducible and stream-separated") {
    Xoshiro256 a(123), b(123), c(124);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        auto va = a.next(), vb = b.next(), vc = c.next();
        all_equal = all_equal && va == vb;
        any_diff = any_diff || va != vc;
    }
    CHECK(all_equal);
    CHECK(any_diff);

    auto s1 = trial_stream(7, "prop", 0), s2 = trial_stream(7, "prop", 0), s3 = trial_stream(7, "prop", 1);
    CHECK(s1.next() == s2.next());
    CHECK(s1.next() != s3.next());
}

TEST_CASE("generators are deterministic and sound") {
    RatField q;
    InstanceGen<RatField> a(q, 3, 6, Xoshiro256(9)), b(q, 3, 6, Xoshiro256(9));
    auto xa = a.random_object();
    auto xb = b.random_object();
    CHECK(object_to_dfn(xa) == object_to_dfn(xb));
    CHECK(xa.dim() <= 6);

    auto parts = a.random_jordan_parts();
    auto obj = a.object_of_type(parts);
    CHECK(obj.type().parts == parts);

    GFp f97(97);
    InstanceGen<GFp> g(f97, 4, 8, Xoshiro256(10));
    auto y = g.random_object();
    auto ses = g.random_invariant_ses(y);
    CHECK(check_ses(ses.i, ses.p));
    auto e0 = g.random_idempotent_matrix(y.dim());
    CHECK(e0 * e0 == e0);
    // zero-dimensional edge: the sequence degenerates to 0 -> 0 -> 0
    auto zero_ses = g.random_invariant_ses(DiffObject<GFp>::zero(f97, 4));
    CHECK(zero_ses.i.src().dim() == 0);
}

TEST_CASE("dfn object round trip") {
    RatField q;
    InstanceGen<RatField> gen(q, 3, 5, Xoshiro256(31));
    auto x = gen.random_object();
    AnyObject back = parse_object_text(object_to_dfn(x), "roundtrip");
    auto* px = std::get_if<DiffObject<RatField>>(&back);
    REQUIRE(px != nullptr);
    CHECK(*px == x);

    GFp f5(5);
    InstanceGen<GFp> gen5(f5, 2, 5, Xoshiro256(32));
    auto y = gen5.random_object();
    AnyObject back5 = parse_object_text(object_to_dfn(y), "roundtrip");
    auto* py = std::get_if<DiffObject<GFp>>(&back5);
    REQUIRE(py != nullptr);
    CHECK(*py == y);
}

TEST_CASE("dfn files: morphism and ses loading") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "diffn_io_test";
    fs::create_directories(dir);

    RatField q;
    auto j2 = DiffObject<RatField>(q, 2, Matrix<RatField>::from_rows(q, {{0, 0}, {1, 0}}));
    auto j1 = DiffObject<RatField>(q, 2, Matrix<RatField>(q, 1, 1));
    DiffMorphism<RatField> incl(j1, j2, Matrix<RatField>::from_rows(q, {{0}, {1}}));
    DiffMorphism<RatField> proj(j2, j1, Matrix<RatField>::from_rows(q, {{1, 0}}));

    write_text_file(dir / "j2.dfn", object_to_dfn(j2));
    write_text_file(dir / "j1.dfn", object_to_dfn(j1));
    write_text_file(dir / "i.dfn", morphism_to_dfn(incl, "j1.dfn", "j2.dfn"));
    write_text_file(dir / "p.dfn", morphism_to_dfn(proj, "j2.dfn", "j1.dfn"));
    write_text_file(dir / "s.dfn", ses_to_dfn("i.dfn", "p.dfn"));

    CHECK(dfn_kind(dir / "j2.dfn") == "object");
    CHECK(dfn_kind(dir / "i.dfn") == "morphism");
    CHECK(dfn_kind(dir / "s.dfn") == "ses");

    auto mor = load_morphism(dir / "i.dfn");
    auto* pm = std::get_if<DiffMorphism<RatField>>(&mor);
    REQUIRE(pm != nullptr);
    CHECK(pm->mat() == incl.mat());

    auto ses = load_ses(dir / "s.dfn");
    CHECK(std::holds_alternative<ShortExactSeq<RatField>>(ses));

    // malformed inputs are rejected with input errors
    write_text_file(dir / "bad1.dfn", "dfn-object v1 field=Q n=2 dim=1\nx\n");
    CHECK_THROWS_AS(load_object(dir / "bad1.dfn"), InputError);
    write_text_file(dir / "bad2.dfn", "dfn-object v1 field=Q n=2 dim=1\n1\n");
    CHECK_THROWS_AS(load_object(dir / "bad2.dfn"), InputError);  // nilpotency violated
    write_text_file(dir / "bad3.dfn", "dfn-object v1 field=6 n=2 dim=1\n0\n");
    CHECK_THROWS_AS(load_object(dir / "bad3.dfn"), InputError);  // 6 is not prime
    write_text_file(dir / "bad4.dfn", "something else\n");
    CHECK_THROWS_AS(dfn_kind(dir / "bad4.dfn"), InputError);
    CHECK_THROWS_AS(load_object(dir / "missing.dfn"), InputError);
}

TEST_CASE("verify runs are deterministic") {
    GenConfig cfg;
    cfg.seed = 5;
    cfg.field = FieldSpec::prime(5);
    cfg.n = 3;
    cfg.max_dim = 4;
    cfg.trials = 2;

    auto r1 = run_verify(cfg, std::string("harness.generator_soundness"));
    auto r2 = run_verify(cfg, std::string("harness.generator_soundness"));
    CHECK(r1.ok());
    CHECK(r1.body() == r2.body());
    CHECK(r1.results.size() == 1);
    CHECK(r1.results[0].trials == 2);

    CHECK_THROWS_AS(run_verify(cfg, std::string("nonexistent.property")), InputError);
    GenConfig bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(run_verify(bad), InputError);
}

TEST_CASE("property names are sorted and stable") {
    auto names = verify_property_names();
    CHECK(names.size() >= 25);
    CHECK(std::is_sorted(names.begin(), names.end()));
    for (const auto& prefix : {"exactla.", "core.", "homotopy.", "derived.", "harness."}) {
        bool found = false;
        for (const auto& n : names) found = found || n.rfind(prefix, 0) == 0;
        CHECK(found);
    }
}

TEST_CASE("a tiny verify slice passes on both fields") {
    for (const char* field : {"2", "Q"}) {
        GenConfig cfg;
        cfg.seed = 1;
        cfg.field = FieldSpec::parse(field);
        cfg.n = 2;
        cfg.max_dim = 3;
        cfg.trials = 2;
        auto report = run_verify(cfg, std::string("homotopy.cone_triangle"));
        CHECK(report.ok());
    }
}
