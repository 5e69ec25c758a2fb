#include "support.hpp"

#include "tiergraph/config.hpp"
#include "tiergraph/corpus.hpp"
#include "tiergraph/error.hpp"
#include "tiergraph/hash.hpp"
#include "tiergraph/layer.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace tiergraph;
using testsupport::TempDir;

TEST_SUITE("corpus_ingest") {

TEST_CASE("categorize_file by extension") {
    ProjectConfig config;
    CHECK(categorize_file("Order.cs", config) == FileCategory::CodeBehind);
    CHECK(categorize_file("strings.resx", config) == FileCategory::NonCode);
    CHECK(categorize_file("view.html", config) == FileCategory::NonCode);
    CHECK(categorize_file("a/b/Queries.xml", config) == FileCategory::NonCode);
    CHECK(categorize_file("t.xslt", config) == FileCategory::NonCode);
    CHECK(categorize_file("Makefile", config) == FileCategory::NonCode);
    CHECK(categorize_file("Page.aspx.cs", config) == FileCategory::CodeBehind);
    config.non_code_extensions = {"cs"};
    CHECK(categorize_file("Order.cs", config) == FileCategory::NonCode);
}

TEST_CASE("layer_of uses the longest matching prefix") {
    ProjectConfig web;
    web.layer_bindings = {{"Shop.Web", LayerKind::UI}};
    CHECK(layer_of("Shop.Web.Controllers", web) == LayerKind::UI);

    ProjectConfig nested;
    nested.layer_bindings = {{"Shop", LayerKind::Business}, {"Shop.Data", LayerKind::Data}};
    CHECK(layer_of("Shop.Data.Repos", nested) == LayerKind::Data);
    CHECK(layer_of("Shop.Rules", nested) == LayerKind::Business);
    CHECK(layer_of("Shop.DataX", nested) == LayerKind::Business);

    ProjectConfig third;
    third.third_party_namespaces = {"System"};
    CHECK(layer_of("System.Text", third) == LayerKind::ThirdParty);
    CHECK(layer_of("Other", third) == LayerKind::Unknown);
}

TEST_CASE("adding a longer binding leaves non-matching namespaces alone") {
    testsupport::Rng rng(11);
    const std::vector<std::string> pool = {"A", "A.B", "A.B.C", "A.C", "B", "B.A", "C.D.E"};
    const std::vector<LayerKind> layers = {LayerKind::UI, LayerKind::Business, LayerKind::Data, LayerKind::WebService};
    for (int round = 0; round < 200; ++round) {
        ProjectConfig config;
        std::set<std::string> used;
        for (int i = 0; i < 3; ++i) {
            auto prefix = pool[testsupport::pick(rng, pool.size())];
            if (used.insert(prefix).second)
                config.layer_bindings.push_back({prefix, layers[testsupport::pick(rng, layers.size())]});
        }
        auto added = pool[testsupport::pick(rng, pool.size())] + ".X";
        auto extended = config;
        extended.layer_bindings.push_back({added, LayerKind::Data});
        for (const auto &ns : pool) {
            if (namespace_matches(ns + ".Y", added))
                continue;
            CHECK(layer_of(ns + ".Y", config) == layer_of(ns + ".Y", extended));
        }
    }
}

TEST_CASE("layer ranks are ordered") {
    CHECK(*layer_rank(LayerKind::UI) > *layer_rank(LayerKind::Business));
    CHECK(*layer_rank(LayerKind::Business) > *layer_rank(LayerKind::Data));
    CHECK_FALSE(layer_rank(LayerKind::WebService).has_value());
    for (auto l : {LayerKind::UI, LayerKind::Business, LayerKind::Data, LayerKind::WebService, LayerKind::ThirdParty,
                   LayerKind::Unknown})
        CHECK(parse_layer(to_string(l)) == l);
}

TEST_CASE("config parsing") {
    TempDir tmp;
    auto text = R"({"data_dir": "out", "projects": [
        {"id": "P", "root": "src", "layers": [{"prefix": "P.Ui", "layer": "UI"}],
         "non_code_extensions": ["Config"], "third_party_namespaces": ["System"]}]})";
    auto config = parse_config(text, tmp.path());
    REQUIRE(config.projects.size() == 1);
    CHECK(config.projects[0].root_path == tmp.path() / "src");
    CHECK(config.data_dir == tmp.path() / "out");
    CHECK(config.projects[0].non_code_extensions.count("config") == 1);
    CHECK(config.find_project("P") != nullptr);
    CHECK(config.find_project("Q") == nullptr);

    auto dup = R"({"projects": [{"id": "P", "root": "s", "layers": [
        {"prefix": "P", "layer": "UI"}, {"prefix": "P", "layer": "Data"}]}]})";
    CHECK_THROWS_AS(parse_config(dup, tmp.path()), ConfigError);
    auto bad_layer = R"({"projects": [{"id": "P", "root": "s", "layers": [{"prefix": "P", "layer": "ThirdParty"}]}]})";
    CHECK_THROWS_AS(parse_config(bad_layer, tmp.path()), ConfigError);
    CHECK_THROWS_AS(parse_config("{", tmp.path()), ConfigError);
    CHECK_THROWS_AS(load_config(tmp / "missing.json"), ConfigError);
}

TEST_CASE("config path: flag wins over environment") {
    ::setenv(kConfigEnvVar, "/from/env.json", 1);
    CHECK(resolve_config_path("") == "/from/env.json");
    CHECK(resolve_config_path("cli.json") == "cli.json");
    ::unsetenv(kConfigEnvVar);
    CHECK_THROWS_AS(resolve_config_path(""), ConfigError);
}

TEST_CASE("empty directory gives an empty inventory") {
    TempDir tmp;
    ProjectConfig p;
    p.project_id = "E";
    p.root_path = tmp.path();
    CHECK(scan_corpus({p}).files.empty());
}

TEST_CASE("missing root names the project") {
    ProjectConfig p;
    p.project_id = "Ghost";
    p.root_path = "/nonexistent/tiergraph/root";
    try {
        scan_corpus({p});
        FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
        CHECK(std::string(e.what()).find("Ghost") != std::string::npos);
    }
}

TEST_CASE("bundled corpus matches the hand count") {
    auto config = load_config(testsupport::corpus_config_path());
    auto inventory = scan_corpus(config.projects);

    std::ifstream in(testsupport::fixture_dir() / "corpus_counts.txt");
    std::string line;
    std::size_t expected_total = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        std::string project;
        std::size_t files = 0, code = 0, noncode = 0;
        row >> project >> files >> code >> noncode;
        std::size_t got_files = 0, got_code = 0, got_noncode = 0;
        for (const auto &f : inventory.files) {
            if (f.project_id != project)
                continue;
            ++got_files;
            (f.category == FileCategory::CodeBehind ? got_code : got_noncode)++;
        }
        CAPTURE(project);
        CHECK(got_files == files);
        CHECK(got_code == code);
        CHECK(got_noncode == noncode);
        expected_total += files;
    }
    CHECK(inventory.files.size() == expected_total);
    for (const auto &f : inventory.files)
        CHECK(f.path.find(".svn") == std::string::npos);
}

TEST_CASE("inventory is sorted, unique and deterministic") {
    auto config = load_config(testsupport::corpus_config_path());
    auto a = scan_corpus(config.projects);
    auto b = scan_corpus(config.projects);
    CHECK(a == b);
    for (std::size_t i = 1; i < a.files.size(); ++i) {
        auto prev = std::tie(a.files[i - 1].project_id, a.files[i - 1].path);
        auto cur = std::tie(a.files[i].project_id, a.files[i].path);
        CHECK(prev < cur);
    }
    auto reversed = config.projects;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(scan_corpus(reversed).files == a.files);
}

TEST_CASE("content hash tracks file bytes") {
    TempDir tmp;
    testsupport::write_text(tmp / "A.cs", "class A {}");
    testsupport::write_text(tmp / "sub/B.cs", "class B {}");
    testsupport::write_text(tmp / ".hidden/C.cs", "class C {}");
    ProjectConfig p;
    p.project_id = "P";
    p.root_path = tmp.path();
    auto first = scan_corpus({p});
    REQUIRE(first.files.size() == 2);
    CHECK(first.files[1].path == "sub/B.cs");
    CHECK(first.files[0].content_hash == sha256_hex("class A {}"));
    testsupport::write_text(tmp / "A.cs", "class A { }");
    auto second = scan_corpus({p});
    CHECK(second.files[0].content_hash != first.files[0].content_hash);
    CHECK(second.files[1].content_hash == first.files[1].content_hash);
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}
