#include "support.hpp"

#include "tiergraph/diagnostics.hpp"
#include "tiergraph/extractor.hpp"
#include "tiergraph/source.hpp"

#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

using namespace tiergraph;

namespace {

struct Piece {
    std::string text;
    bool noise;
};

// Builds source from code and noise pieces. The expected stripped text is
// known by construction: noise bytes become spaces, newlines survive.
Piece random_piece(testsupport::Rng &rng) {
    using testsupport::pick;
    auto word = [&] { return testsupport::random_identifier(rng); };
    auto filler = [&](std::string_view alphabet) {
        std::string s;
        auto n = pick(rng, 12);
        for (std::size_t i = 0; i < n; ++i)
            s += alphabet[pick(rng, alphabet.size())];
        return s;
    };
    switch (pick(rng, 9)) {
    case 0:
        return {"//" + filler("ab c.D();\"'*/") , true};
    case 1:
        return {"/*" + filler("ab\nc.D()\"'/") + "*/", true};
    case 2:
        return {"\"" + filler("ab c.D()'/*") + "\\\"" + filler("xy") + "\"", true};
    case 3:
        return {"@\"" + filler("a\nb\\c.D()") + "\"\"" + "\"", true};
    case 4:
        return {pick(rng, 2) ? "'x'" : "'\\''", true};
    case 5:
        return {"$\"" + filler("x{y}.Z()") + "\"", true};
    case 6:
        return {"\n", false};
    case 7:
        return {" a / b >= c ", false};
    default:
        return {" " + word() + "." + word() + "(" + word() + ");", false};
    }
}

std::string blank(const std::string &s) {
    std::string out = s;
    for (auto &c : out)
        if (c != '\n' && c != '\r')
            c = ' ';
    return out;
}

std::vector<std::string> split_ws(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

} // namespace

TEST_SUITE("extractor") {

TEST_CASE("strip_noise examples") {
    CHECK(strip_noise("a.B(); // c.D()") == "a.B();         ");
    auto s = strip_noise(R"x(var s = "x.Y()";)x");
    CHECK(s.size() == 16);
    CHECK(s == "var s =        ;");
    CHECK(strip_noise("int a = b / c;\nx.Y();") == "int a = b / c;\nx.Y();");
    CHECK(strip_noise("/* a\nb */x") == "    \n    x");
    CHECK(strip_noise("char c = '\"'; d.E();") == "char c =    ; d.E();");
}

TEST_CASE("strip_noise unterminated regions run to the end with a diagnostic") {
    Diagnostics d;
    auto out = strip_noise("a.B(); /* open\nc.D();", &d, "f.cs");
    CHECK(out == "a.B();        \n      ");
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == diag::kUnterminatedComment);
    CHECK(d[0].file == "f.cs");
    d.clear();
    strip_noise("x = \"never closed", &d);
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == diag::kUnterminatedString);
}

TEST_CASE("strip_noise matches the constructed expectation") {
    testsupport::Rng rng(20260316);
    for (int round = 0; round < 500; ++round) {
        std::string source, expected;
        auto n = testsupport::pick(rng, 15) + 1;
        for (std::size_t i = 0; i < n; ++i) {
            auto p = random_piece(rng);
            source += " ", expected += " ";
            source += p.text;
            expected += p.noise ? blank(p.text) : p.text;
            if (p.text.starts_with("//"))
                source += "\n", expected += "\n";
        }
        CAPTURE(source);
        auto out = strip_noise(source);
        CHECK(out == expected);
        CHECK(out.size() == source.size());
        CHECK(strip_noise(out) == out);
        CHECK(std::count(out.begin(), out.end(), '\n') == std::count(source.begin(), source.end(), '\n'));
    }
}

TEST_CASE("tokenizer") {
    auto toks = tokenize("a.B(x => x >= 1.5); @class", 10);
    std::vector<std::string> texts;
    for (auto &t : toks)
        texts.emplace_back(t.text);
    CHECK(texts == std::vector<std::string>{"a", ".", "B", "(", "x", "=>", "x", ">=", "1.5", ")", ";", "class"});
    CHECK(toks[0].offset == 10);
    CHECK(toks[2].offset == 12);
    CHECK(toks[8].kind == TokenKind::Number);
    CHECK(toks.back().kind == TokenKind::Identifier);
}

TEST_CASE("extract_usings") {
    auto u = extract_usings("using System.Collections.Generic;\n");
    REQUIRE(u.size() == 1);
    CHECK(u[0].segments == std::vector<std::string>{"System", "Collections", "Generic"});
    CHECK(u[0].raw == "System.Collections.Generic");
    CHECK(extract_usings("namespace A { }").empty());
    auto two = extract_usings("using Shop.Business;\n  using Shop.Data;\n");
    REQUIRE(two.size() == 2);
    CHECK(two[0].raw == "Shop.Business");
    CHECK(two[1].raw == "Shop.Data");

    Diagnostics d;
    auto broken = extract_usings("using Shop.Data\nusing Shop.Web;\n", &d);
    REQUIRE(broken.size() == 1);
    CHECK(broken[0].raw == "Shop.Web");
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == diag::kUsingWithoutSemicolon);

    CHECK(extract_usings("using (var c = Open()) { }\nusing Alias = A.B;\n").empty());
}

TEST_CASE("using directives reconstruct from their segments") {
    testsupport::Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        std::string text;
        std::vector<std::string> raws;
        auto n = testsupport::pick(rng, 4) + 1;
        for (std::size_t i = 0; i < n; ++i) {
            std::string raw = testsupport::random_identifier(rng);
            auto depth = testsupport::pick(rng, 4);
            for (std::size_t k = 0; k < depth; ++k)
                raw += "." + testsupport::random_identifier(rng);
            raws.push_back(raw);
            text += std::string(testsupport::pick(rng, 3), ' ') + "using " + raw + ";\n";
        }
        auto u = extract_usings(text);
        REQUIRE(u.size() == raws.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            CHECK(u[i].raw == raws[i]);
            std::string joined;
            for (const auto &s : u[i].segments)
                joined += (joined.empty() ? "" : ".") + s;
            CHECK(joined == u[i].raw);
        }
    }
}

TEST_CASE("extract_classes") {
    auto c = extract_classes("public class OrderService : BaseService, IOrderService {\n}", "Shop.Business");
    REQUIRE(c.size() == 1);
    CHECK(c[0].name == "OrderService");
    CHECK(c[0].qualifier == "public");
    CHECK(c[0].parents == std::vector<std::string>{"BaseService", "IOrderService"});
    CHECK(c[0].ns == "Shop.Business");
    CHECK(c[0].methods.empty());
    CHECK_FALSE(c[0].is_static);

    auto s = extract_classes("internal static class MathUtil {\n}", "");
    REQUIRE(s.size() == 1);
    CHECK(s[0].name == "MathUtil");
    CHECK(s[0].qualifier == "internal static");
    CHECK(s[0].parents.empty());
    CHECK(s[0].is_static);

    auto g = extract_classes("class Box<T> : List<T>, IBox where T : class { class Inner { } }", "N");
    REQUIRE(g.size() == 2);
    CHECK(g[0].name == "Box");
    CHECK(g[0].type_param_count == 1);
    CHECK(g[0].parents == std::vector<std::string>{"List", "IBox"});
    CHECK(g[1].name == "Box.Inner");
    CHECK(g[1].fq_name() == "N.Box.Inner");

    Diagnostics d;
    auto none = extract_classes("public class { }", "N", &d);
    CHECK(none.empty());
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == diag::kClassWithoutName);
}

TEST_CASE("classes of corpus files match the manual listing") {
    std::ifstream in(testsupport::fixture_dir() / "classes.txt");
    std::string line;
    int files = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        auto colon = line.find(':');
        auto rel = line.substr(0, colon);
        auto expected = split_ws(line.substr(colon + 1));
        auto model = extract_file(testsupport::read_text(testsupport::corpus_dir() / rel), rel);
        std::vector<std::string> got;
        for (const auto &c : model.classes)
            if (c.kind == TypeKind::Class)
                got.push_back(c.fq_name());
        CAPTURE(rel);
        CHECK(got == expected);
        ++files;
    }
    CHECK(files == 5);
}

TEST_CASE("extract_members") {
    auto m = extract_members("public int GetCount(string id) { return 1; }");
    REQUIRE(m.methods.size() == 1);
    CHECK(m.methods[0].accessibility == "public");
    CHECK(m.methods[0].return_type == "int");
    CHECK(m.methods[0].name == "GetCount");
    REQUIRE(m.methods[0].parameters.size() == 1);
    CHECK(m.methods[0].parameters[0].type == "string");
    CHECK(m.methods[0].parameters[0].name == "id");

    auto p = extract_members("public string Name { get; set; }");
    REQUIRE(p.properties.size() == 1);
    CHECK(p.properties[0].access == "public");
    CHECK(p.properties[0].return_type == "string");
    CHECK(p.properties[0].name == "Name");
    CHECK_FALSE(p.properties[0].has_body());

    auto f = extract_members("private OrderRepository repo;\nprivate int count;");
    REQUIRE(f.fields.size() == 2);
    CHECK(f.fields[0].declared_type == "OrderRepository");
    CHECK(f.fields[0].is_custom);
    CHECK(f.fields[1].declared_type == "int");
    CHECK_FALSE(f.fields[1].is_custom);

    auto e = extract_members("public int Twice(int x) => x * 2;\npublic decimal Total => lines.Sum();");
    REQUIRE(e.methods.size() == 1);
    CHECK(e.methods[0].name == "Twice");
    CHECK_FALSE(e.methods[0].contains_anonymous);
    REQUIRE(e.properties.size() == 1);
    CHECK(e.properties[0].name == "Total");
    CHECK(e.properties[0].has_body());
}

TEST_CASE("builtin exclusion covers nullable and array forms") {
    for (auto t : {"bool", "byte", "sbyte", "char", "decimal", "double", "float", "int", "uint", "long", "ulong",
                   "short", "ushort", "object", "string", "void", "var"})
        CHECK(default_builtin_types().count(t) == 1);
    auto f = extract_members("int? a; string[] b; List<Order> c; Order[] d;");
    REQUIRE(f.fields.size() == 4);
    CHECK_FALSE(f.fields[0].is_custom);
    CHECK_FALSE(f.fields[1].is_custom);
    CHECK(f.fields[2].is_custom);
    CHECK(f.fields[3].is_custom);
    CHECK(base_type_name("List<Order>[]?") == "List");
    CHECK(base_type_name("global::Shop.Order") == "Shop.Order");

    ExtractOptions options;
    options.builtin_types.insert("Guid");
    auto g = extract_members("Guid id;", {}, 0, nullptr, options);
    REQUIRE(g.fields.size() == 1);
    CHECK_FALSE(g.fields[0].is_custom);
}

TEST_CASE("parameters parse back to the original list") {
    const std::vector<std::string> lists = {
        "", "int a", "string id, int count", "ref Order o, out int n", "Dictionary<string, List<int>> map",
        "int x = 3, params object[] rest", "this IEnumerable<T> source", "int?  maybe ,  Order[] all"};
    for (const auto &list : lists) {
        auto m = extract_members("void M(" + list + ") { }");
        REQUIRE(m.methods.size() == 1);
        CAPTURE(list);
        CHECK(m.methods[0].parameter_text == list);
        CHECK(normalize_whitespace(render_parameters(m.methods[0].parameters)) == normalize_whitespace(list));
    }
}

TEST_CASE("extract_call_sites examples") {
    auto a = extract_call_sites("repo.Save(order);", "M");
    REQUIRE(a.size() == 1);
    CHECK(a[0].receiver_token == "repo");
    CHECK(a[0].member_token == "Save");
    CHECK(a[0].is_invocation);
    CHECK(a[0].enclosing_method == "M");

    auto b = extract_call_sites("var n = order.Total;", "M");
    REQUIRE(b.size() == 1);
    CHECK(b[0].receiver_token == "order");
    CHECK(b[0].member_token == "Total");
    CHECK_FALSE(b[0].is_invocation);

    // hand-applied: ForEach is the only traced site, x.Commit sits in the lambda body
    Diagnostics d;
    auto body = "items.ForEach(x => x.Commit());";
    auto c = extract_call_sites(body, "M", 0, &d);
    REQUIRE(c.size() == 1);
    CHECK(c[0].receiver_token == "items");
    CHECK(c[0].member_token == "ForEach");
    CHECK(c[0].is_invocation);
    CHECK(detect_anonymous(body) == std::vector<std::size_t>{16});
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == diag::kLambdaBodySkipped);
    CHECK(d[0].symbol == "Commit");
}

TEST_CASE("chained links keep only the first link") {
    Diagnostics d;
    auto sites = extract_call_sites("a.B().C().D(); x.y.Z();", "M", 0, &d);
    REQUIRE(sites.size() == 2);
    CHECK(sites[0].member_token == "B");
    CHECK(sites[1].receiver_token == "x");
    CHECK(sites[1].member_token == "y");
    CHECK_FALSE(sites[1].is_invocation);
    CHECK(summarize(d).at(std::string(diag::kChainLinkSkipped)) == 3);
}

TEST_CASE("bare calls are reported, not traced") {
    Diagnostics d;
    auto sites = extract_call_sites("Validate(order); var o = new Order(1); int n = Count(x);", "M", 0, &d);
    CHECK(sites.empty());
    auto s = summarize(d);
    CHECK(s.at(std::string(diag::kBareCall)) == 2);
}

TEST_CASE("detect_anonymous") {
    CHECK(detect_anonymous("x => x.Id").size() == 1);
    CHECK(detect_anonymous("if (a >= b) { }").empty());
    auto two = detect_anonymous("a.Where(x => x.Ok).Select(y => y.Id);", 100);
    REQUIRE(two.size() == 2);
    CHECK(two[0] < two[1]);
    CHECK(two[0] == 110);
}

TEST_CASE("locals") {
    auto l = extract_locals("var tmp = Make(); Order o = repo.Find(1); var r = new OrderRepository(); int n = 0;");
    REQUIRE(l.size() == 4);
    CHECK(l[0].name == "tmp");
    CHECK(l[0].type == "var");
    CHECK(l[1].type == "Order");
    CHECK(l[2].name == "r");
    CHECK(l[2].type == "OrderRepository");
    CHECK(l[3].type == "int");
    auto f = extract_locals("foreach (ReportRow row in rows) { } using (var c = new Conn()) { }");
    REQUIRE(f.size() == 2);
    CHECK(f[0].type == "ReportRow");
    CHECK(f[1].type == "Conn");
}

TEST_CASE("every dot pair in a clean body is one call site") {
    testsupport::Rng rng(77);
    const std::regex pair(R"(([A-Za-z_][A-Za-z0-9_]*)\s*\.\s*([A-Za-z_][A-Za-z0-9_]*))");
    for (int round = 0; round < 300; ++round) {
        std::string body;
        auto n = testsupport::pick(rng, 6) + 1;
        for (std::size_t i = 0; i < n; ++i) {
            auto r = testsupport::random_identifier(rng);
            auto m = testsupport::random_identifier(rng);
            auto arg = testsupport::random_identifier(rng);
            switch (testsupport::pick(rng, 4)) {
            case 0:
                body += r + "." + m + "(" + arg + ");\n";
                break;
            case 1:
                body += "var " + arg + " = " + r + " . " + m + ";\n";
                break;
            case 2:
                body += r + "." + m + "(" + arg + "." + testsupport::random_identifier(rng) + ", 2);\n";
                break;
            default:
                body += "if (" + arg + " >= 1) { " + r + "." + m + "(); }\n";
            }
        }
        std::set<std::tuple<std::string, std::string, std::size_t>> expected, got;
        for (auto it = std::sregex_iterator(body.begin(), body.end(), pair); it != std::sregex_iterator(); ++it)
            expected.emplace((*it)[1].str(), (*it)[2].str(), static_cast<std::size_t>(it->position(1)));
        auto sites = extract_call_sites(body, "M");
        for (const auto &s : sites)
            got.emplace(s.receiver_token, s.member_token, s.char_offset);
        CAPTURE(body);
        CHECK(sites.size() == expected.size());
        CHECK(got == expected);
    }
}

TEST_CASE("offsets index the original file") {
    auto source = testsupport::read_text(testsupport::corpus_dir() / "Shop.Business/OrderService.cs");
    auto model = extract_file(source, "OrderService.cs");
    std::size_t checked = 0;
    for (const auto &c : model.classes)
        for (const auto &m : c.methods)
            for (const auto &s : m.call_sites) {
                CHECK(source.compare(s.char_offset, s.receiver_token.size(), s.receiver_token) == 0);
                CHECK(m.body_span.contains(s.char_offset));
                ++checked;
            }
    CHECK(checked > 5);
}

TEST_CASE("extract_file over a full source") {
    auto source = R"(// <auto-generated/>
using System;
using Shop.Data;

namespace Shop.Business
{
    /* class Fake { } */
    public partial class OrderService : BaseService
    {
        private OrderRepository repo;
        private string label = "class Nope { }";

        public void Place(Order order)
        {
            repo.Insert(order);
            order.Lines.ForEach(l => l.Check());
        }

        public int Count { get { return repo.Count(); } }

        class Helper
        {
            public void Go() { }
        }
    }
}
)";
    auto f = extract_file(source, "Shop.Business/OrderService.cs", "Shop.Business");
    CHECK(f.generated_marker);
    CHECK(f.project_id == "Shop.Business");
    REQUIRE(f.usings.size() == 2);
    REQUIRE(f.classes.size() == 2);
    const auto &c = f.classes[0];
    CHECK(c.fq_name() == "Shop.Business.OrderService");
    CHECK(c.is_partial);
    CHECK(c.file == "Shop.Business/OrderService.cs");
    REQUIRE(c.methods.size() == 1);
    CHECK(method_id(c, c.methods[0]) == "Shop.Business.OrderService.Place(Order)");
    CHECK(c.methods[0].contains_anonymous);
    REQUIRE(c.methods[0].call_sites.size() == 2);
    CHECK(c.methods[0].call_sites[1].member_token == "Lines");
    REQUIRE(c.properties.size() == 1);
    CHECK(property_id(c, c.properties[0]) == "Shop.Business.OrderService.Count");
    REQUIRE(c.properties[0].call_sites.size() == 1);
    CHECK(c.fields.size() == 2);
    CHECK(f.classes[1].fq_name() == "Shop.Business.OrderService.Helper");
    CHECK(f.classes[1].methods.size() == 1);
}

TEST_CASE("malformed sources never throw") {
    testsupport::Rng rng(99);
    const std::vector<std::string> fragments = {"class", "{", "}", "(", ")", "namespace", "A", ".", "B", ";", "=>",
                                                "\"", "/*", "//", "public", "void", "<", ">", ",", ":", "\n", "=",
                                                "using", "new", "static", "get", "set", "'", "[", "]"};
    for (int round = 0; round < 500; ++round) {
        std::string source;
        auto n = testsupport::pick(rng, 60);
        for (std::size_t i = 0; i < n; ++i)
            source += fragments[testsupport::pick(rng, fragments.size())] + " ";
        CAPTURE(source);
        CHECK_NOTHROW(extract_file(source, "x.cs"));
    }
}

}
