#include "syzmirror/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "syzmirror/disk_topology.hpp"
#include "syzmirror/error.hpp"
#include "syzmirror/flat_coords.hpp"
#include "syzmirror/periods.hpp"
#include "syzmirror/refdata.hpp"

namespace syzmirror::cli {

namespace {

using json = nlohmann::json;

// Usage problems found after argument parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string vec_string(const IntVector &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + std::to_string(v[i]);
    }
    return s + ")";
}

std::string index_string(const MultiIndex &d)
{
    return vec_string(IntVector(d.begin(), d.end()));
}

json series_json(const MultiSeries &s)
{
    json terms = json::array();
    for (const auto &[d, c] : s.terms()) {
        terms.push_back({{"index", d}, {"value", to_string(c)}});
    }
    return {{"num_vars", s.num_vars()}, {"cutoff", s.cutoff()}, {"terms", terms}};
}

json rat_vector_json(const RatVector &v)
{
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(to_string(x));
    }
    return out;
}

std::string series_text(const MultiSeries &s, const std::vector<std::string> &names, OutputFormat f)
{
    return f == OutputFormat::Latex ? format_series_latex(s, names) : format_series(s, names);
}

void require_not_latex(const RunConfig &c)
{
    if (c.format == OutputFormat::Latex) {
        throw UsageError("LaTeX output is not available for '" + c.subcommand + "'");
    }
}

struct Input {
    FanDocument doc;
    ValidatedFan vf;
};

Input load_input(const RunConfig &c)
{
    FanDocument doc;
    if (!c.input.empty()) {
        doc = parse_fan_document(read_file(c.input));
    } else if (!c.example.empty()) {
        doc.fan = lookup_reference(c.example).fan;
    } else {
        throw UsageError("a fan file or --example is required");
    }
    ValidateOptions opts;
    opts.base_cone = c.base_cone;
    ValidatedFan vf = validate_fan(doc.fan, opts);
    return {std::move(doc), std::move(vf)};
}

void warn_summation_cone(const ChargeMatrix &q, std::ostream &err)
{
    if (auto w = summation_cone_witness(q, 3)) {
        err << "warning: the Gamma series has a nonvanishing term at d = " << index_string(*w)
            << " outside the nonnegative orthant; the summation may miss part of the Mori cone\n";
    }
}

int cmd_validate(const RunConfig &c, std::ostream &out)
{
    require_not_latex(c);
    const Input in = load_input(c);
    const auto &vf = in.vf;
    const auto compact = compact_divisors(vf);
    if (c.format == OutputFormat::Structured) {
        json j;
        j["rank"] = vf.rank();
        j["num_rays"] = vf.num_rays();
        j["num_max_cones"] = vf.fan.max_cones.size();
        j["base_cone"] = vf.cy.base_cone;
        j["base_rays"] = vf.cy.base_rays;
        j["covector"] = vf.cy.covector;
        j["dual_basis"] = vf.cy.dual_basis;
        j["compact_divisors"] = compact;
        j["num_classes"] = vf.num_classes();
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "valid toric Calabi-Yau fan\n";
    out << "rank: " << vf.rank() << "\n";
    out << "rays: " << vf.num_rays() << "\n";
    out << "maximal cones: " << vf.fan.max_cones.size() << "\n";
    IntVector base(vf.cy.base_rays.begin(), vf.cy.base_rays.end());
    out << "base cone: " << vf.cy.base_cone << " " << vec_string(base) << "\n";
    out << "covector: " << vec_string(vf.cy.covector) << "\n";
    out << "compact divisors: " << vec_string(IntVector(compact.begin(), compact.end())) << "\n";
    out << "curve classes: " << vf.num_classes() << "\n";
    return kExitOk;
}

// Text output for a fan with m == n says so instead of printing nothing.
bool report_no_classes(const RunConfig &c, const ChargeMatrix &q, std::ostream &out)
{
    if (q.num_rows() > 0 || c.format == OutputFormat::Structured) {
        return false;
    }
    out << "no curve classes (m = n)\n";
    return true;
}

int cmd_charges(const RunConfig &c, std::ostream &out)
{
    const Input in = load_input(c);
    const ChargeMatrix q = charge_matrix(in.vf);
    if (c.format == OutputFormat::Structured) {
        json j;
        j["charges"] = q.entries;
        j["row_rays"] = q.row_rays;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    if (report_no_classes(c, q, out)) {
        return kExitOk;
    }
    for (std::size_t a = 0; a < q.num_rows(); ++a) {
        if (c.format == OutputFormat::Latex) {
            out << "Q^{" << a + 1 << "} = " << vec_string(q.entries[a]) << "\n";
        } else {
            out << "Q" << a + 1 << " = " << vec_string(q.entries[a]) << "\n";
        }
    }
    return kExitOk;
}

int cmd_periods(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    const Input in = load_input(c);
    const ChargeMatrix q = charge_matrix(in.vf);
    warn_summation_cone(q, err);
    if (report_no_classes(c, q, out)) {
        return kExitOk;
    }
    const auto periods = single_log_periods(q, c.cutoff);
    const auto names = default_var_names(q.num_rows(), "qc");
    if (c.format == OutputFormat::Structured) {
        json arr = json::array();
        for (const auto &p : periods) {
            arr.push_back({{"index", p.index + 1}, {"f", series_json(p.f)}});
        }
        out << json{{"variables", names}, {"periods", arr}}.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto &p : periods) {
        out << (c.format == OutputFormat::Latex ? "f_{" + std::to_string(p.index + 1) + "} = "
                                                : "f" + std::to_string(p.index + 1) + " = ")
            << series_text(p.f, names, c.format) << "\n";
    }
    return kExitOk;
}

// mirror-map prints q_a(qc); invert prints qc_a(q).
int cmd_map(const RunConfig &c, std::ostream &out, std::ostream &err, bool inverse)
{
    const Input in = load_input(c);
    const ChargeMatrix q = charge_matrix(in.vf);
    warn_summation_cone(q, err);
    if (report_no_classes(c, q, out)) {
        return kExitOk;
    }
    const auto periods = single_log_periods(q, c.cutoff);
    std::vector<MultiSeries> comps;
    if (inverse) {
        comps = inverse_mirror_map(periods).components();
    } else {
        std::vector<MultiSeries> f;
        for (const auto &p : periods) {
            f.push_back(p.f);
        }
        comps = map_components(f);
    }
    const auto lhs = default_var_names(q.num_rows(), inverse ? "qc" : "q");
    const auto vars = default_var_names(q.num_rows(), inverse ? "q" : "qc");
    if (c.format == OutputFormat::Structured) {
        json arr = json::array();
        for (std::size_t a = 0; a < comps.size(); ++a) {
            arr.push_back({{"name", lhs[a]}, {"series", series_json(comps[a])}});
        }
        out << json{{"variables", vars}, {"components", arr}}.dump(2) << "\n";
        return kExitOk;
    }
    for (std::size_t a = 0; a < comps.size(); ++a) {
        const std::string name = c.format == OutputFormat::Latex ? latex_var_name(lhs[a]) : lhs[a];
        out << name << " = " << series_text(comps[a], vars, c.format) << "\n";
    }
    return kExitOk;
}

int cmd_open_gw(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    const Input in = load_input(c);
    const ChargeMatrix q = charge_matrix(in.vf);
    warn_summation_cone(q, err);
    const PipelineResult p = run_pipeline(in.vf, c.cutoff);
    const auto names = default_var_names(q.num_rows());
    if (c.format == OutputFormat::Structured) {
        json j;
        j["variables"] = names;
        if (p.delta) {
            j["divisor"] = p.delta->divisor;
            json coeffs = json::array();
            for (const auto &[d, v] : open_gw_coefficients(*p.delta)) {
                coeffs.push_back({{"alpha", d}, {"n", to_string(v)}});
            }
            j["coefficients"] = coeffs;
            j["delta"] = series_json(p.delta->delta);
        } else {
            j["divisor"] = nullptr;
            j["coefficients"] = json::array();
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    if (!p.delta) {
        out << "no compact divisor: every correction series vanishes\n";
        return kExitOk;
    }
    const std::string dname = "delta_" + std::to_string(p.delta->divisor);
    if (c.format == OutputFormat::Latex) {
        out << "\\delta_{" << p.delta->divisor << "} = " << format_series_latex(p.delta->delta, names) << "\n";
        return kExitOk;
    }
    out << dname << " = " << format_series(p.delta->delta, names) << "\n";
    for (const auto &[d, v] : open_gw_coefficients(*p.delta)) {
        out << "n[beta_" << p.delta->divisor << " + " << index_string(d) << "] = " << to_string(v) << "\n";
    }
    return kExitOk;
}

int cmd_mirror_eq(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    MirrorForm form;
    if (c.form == "flat") {
        form = MirrorForm::Flat;
    } else if (c.form == "cform") {
        form = MirrorForm::Cform;
    } else {
        throw UsageError("--form must be flat or cform");
    }
    const Input in = load_input(c);
    const ChargeMatrix q = charge_matrix(in.vf);
    warn_summation_cone(q, err);
    const PipelineResult p = run_pipeline(in.vf, c.cutoff);
    const DeltaSource ds = p.delta ? DeltaSource::from(*p.delta) : DeltaSource::none(q.num_rows(), c.cutoff);
    const MirrorPolynomial mp = mirror_equation(in.vf, q, ds, form);
    if (c.format == OutputFormat::Structured) {
        json terms = json::array();
        for (const auto &t : mp.terms) {
            json jt{{"ray", t.ray}, {"exponent", t.exponent}, {"one_plus_delta", series_json(t.one_plus_delta)}};
            if (t.area_constant) {
                jt["area_constant"] = "C_" + std::to_string(*t.area_constant);
            } else {
                jt["q_power"] = t.q_power;
            }
            terms.push_back(jt);
        }
        json j{{"form", c.form},
               {"lhs", mp.u_name + mp.v_name},
               {"z_variables", default_var_names(mp.num_z, "z")},
               {"q_variables", default_var_names(q.num_rows())},
               {"terms", terms}};
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << (c.format == OutputFormat::Latex ? format_mirror_latex(mp) : format_mirror(mp)) << "\n";
    return kExitOk;
}

int cmd_discriminant(const RunConfig &c, std::ostream &out)
{
    require_not_latex(c);
    const Input in = load_input(c);
    MomentPolytope poly = default_polytope(in.vf);
    if (in.doc.polytope_constants) {
        poly.constants = *in.doc.polytope_constants;
    }
    Rational k2;
    try {
        k2 = parse_rational(c.k2);
    } catch (const Error &) {
        throw UsageError("--k2 must be a rational number");
    }
    const DiscriminantLocus locus = discriminant_locus(in.vf, poly, k2);
    if (c.format == OutputFormat::Structured) {
        json strata = json::array();
        for (const auto &s : locus.strata) {
            json ineqs = json::array();
            for (std::size_t i = 0; i < s.inequalities.size(); ++i) {
                ineqs.push_back({{"ray", s.inequality_rays[i]},
                                 {"row", rat_vector_json(s.inequalities[i].row)},
                                 {"rhs", to_string(s.inequalities[i].rhs)}});
            }
            json verts = json::array();
            for (const auto &v : s.vertices) {
                verts.push_back(rat_vector_json(v));
            }
            strata.push_back({{"rays", {s.ray_a, s.ray_b}},
                              {"kind", s.kind},
                              {"equation", {{"row", rat_vector_json(s.equation.row)}, {"rhs", to_string(s.equation.rhs)}}},
                              {"inequalities", ineqs},
                              {"vertices", verts}});
        }
        json j{{"k2", to_string(locus.k2)},
               {"polytope_constants", rat_vector_json(poly.constants)},
               {"strata", strata}};
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "boundary stratum: R^" << in.vf.rank() - 1 << " x {" << to_string(-locus.k2) << "}\n";
    for (const auto &s : locus.strata) {
        out << "T{" << s.ray_a << "," << s.ray_b << "}: " << s.kind;
        if (!s.vertices.empty()) {
            out << ", vertices";
            for (const auto &v : s.vertices) {
                out << " (";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    out << (i ? ", " : "") << to_string(v[i]);
                }
                out << ")";
            }
        }
        out << "\n";
    }
    return kExitOk;
}

int cmd_verify(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    require_not_latex(c);
    ReferenceExample ref;
    if (!c.reference_path.empty()) {
        ref = reference_from_json(read_file(c.reference_path));
    } else if (!c.example.empty()) {
        ref = lookup_reference(c.example);
    } else {
        throw UsageError("verify needs --example or --reference");
    }
    if (c.export_reference) {
        out << reference_to_json(ref);
        return kExitOk;
    }
    ValidateOptions opts;
    opts.base_cone = c.base_cone;
    const ValidatedFan vf = validate_fan(ref.fan, opts);
    const ChargeMatrix q = charge_matrix(vf);
    if (q.entries != ref.charge_rows) {
        err << "charge rows differ from the reference record\n";
        out << (c.format == OutputFormat::Structured ? json{{"example", ref.id}, {"result", "FAIL"}}.dump(2) : "FAIL")
            << "\n";
        return kExitMismatch;
    }
    warn_summation_cone(q, err);
    const PipelineResult p = run_pipeline(vf, std::max(c.cutoff, c.order));
    const ReferenceReport report = verify_against_reference(ref, p.delta, p.inverse, c.order);
    const bool pass = report.all_match();
    if (c.format == OutputFormat::Structured) {
        json checks = json::array();
        for (const auto &ch : report.checks) {
            checks.push_back({{"table", ch.table},
                              {"index", ch.index},
                              {"expected", to_string(ch.expected)},
                              {"actual", to_string(ch.actual)},
                              {"match", ch.match},
                              {"erratum", ch.erratum}});
        }
        json j{{"example", ref.id},
               {"order", c.order},
               {"checks", checks},
               {"mismatches", report.mismatches()},
               {"result", pass ? "PASS" : "FAIL"}};
        out << j.dump(2) << "\n";
    } else {
        out << "verify " << ref.id << " through order " << c.order << "\n";
        for (const auto &ch : report.checks) {
            out << ch.table << " " << index_string(ch.index) << ": expected " << to_string(ch.expected) << ", got "
                << to_string(ch.actual) << (ch.match ? " ok" : " MISMATCH");
            if (ch.erratum) {
                out << " (corrected misprint)";
            }
            out << "\n";
        }
        out << (pass ? "PASS" : "FAIL") << " (" << report.checks.size() - report.mismatches() << "/"
            << report.checks.size() << " coefficients match)\n";
    }
    return pass ? kExitOk : kExitMismatch;
}

} // namespace

FanDocument parse_fan_document(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::ParseError, std::string("fan file: ") + e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorCode::ParseError, "fan file: top level must be an object");
    }
    FanDocument doc;
    try {
        for (const auto &[key, value] : j.items()) {
            if (key != "rank" && key != "rays" && key != "max_cones" && key != "polytope_constants") {
                throw Error(ErrorCode::ParseError, "fan file: unknown key '" + key + "'");
            }
        }
        const auto int_of = [](const json &v, const char *what) {
            if (!v.is_number_integer()) {
                throw Error(ErrorCode::ParseError, std::string("fan file: ") + what + " must be integers");
            }
            return v.get<std::int64_t>();
        };
        doc.fan.rank = static_cast<int>(int_of(j.at("rank"), "rank"));
        for (const auto &ray : j.at("rays")) {
            IntVector v;
            for (const auto &x : ray) {
                v.push_back(int_of(x, "ray entries"));
            }
            doc.fan.rays.push_back(std::move(v));
        }
        for (const auto &cone : j.at("max_cones")) {
            Cone cn;
            for (const auto &x : cone) {
                cn.push_back(static_cast<int>(int_of(x, "cone indices")));
            }
            doc.fan.max_cones.push_back(std::move(cn));
        }
        if (j.contains("polytope_constants")) {
            RatVector cs;
            for (const auto &x : j.at("polytope_constants")) {
                if (x.is_string()) {
                    cs.push_back(parse_rational(x.get<std::string>()));
                } else if (x.is_number_integer()) {
                    cs.emplace_back(static_cast<long>(x.get<std::int64_t>()));
                } else {
                    throw Error(ErrorCode::ParseError, "fan file: polytope constants must be \"p/q\" strings");
                }
            }
            doc.polytope_constants = std::move(cs);
        }
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, std::string("fan file: ") + e.what());
    }
    return doc;
}

std::string fan_document_to_json(const FanDocument &doc)
{
    json j;
    j["rank"] = doc.fan.rank;
    j["rays"] = doc.fan.rays;
    j["max_cones"] = doc.fan.max_cones;
    if (doc.polytope_constants) {
        j["polytope_constants"] = rat_vector_json(*doc.polytope_constants);
    }
    return j.dump(2) + "\n";
}

int run(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    try {
        if (c.cutoff < 1) {
            throw UsageError("--cutoff must be at least 1");
        }
        if (c.order < 1) {
            throw UsageError("--order must be at least 1");
        }
        if (c.subcommand == "validate") {
            return cmd_validate(c, out);
        }
        if (c.subcommand == "charges") {
            return cmd_charges(c, out);
        }
        if (c.subcommand == "periods") {
            return cmd_periods(c, out, err);
        }
        if (c.subcommand == "mirror-map") {
            return cmd_map(c, out, err, false);
        }
        if (c.subcommand == "invert") {
            return cmd_map(c, out, err, true);
        }
        if (c.subcommand == "open-gw") {
            return cmd_open_gw(c, out, err);
        }
        if (c.subcommand == "mirror-eq") {
            return cmd_mirror_eq(c, out, err);
        }
        if (c.subcommand == "discriminant") {
            return cmd_discriminant(c, out);
        }
        if (c.subcommand == "verify") {
            return cmd_verify(c, out, err);
        }
        throw UsageError("unknown subcommand '" + c.subcommand + "'");
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitErrorBase + static_cast<int>(e.code());
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Instanton-corrected mirrors of toric Calabi-Yau manifolds"};
    app.require_subcommand(1, 1);
    RunConfig config;
    std::string format = "text";

    const auto add_common = [&](CLI::App *sub, bool needs_fan) {
        if (needs_fan) {
            sub->add_option("fan", config.input, "fan file (JSON)");
            sub->add_option("--example", config.example, "use a bundled example fan (kp1, conifold, kp2, kp1xp1)");
        }
        sub->add_option("--cutoff,-T", config.cutoff, "truncation order (total degree)")->capture_default_str();
        sub->add_option("--base-cone", config.base_cone, "index of the maximal cone used as base cone");
        sub->add_option("--format", format, "text, structured or latex")
            ->check(CLI::IsMember({"text", "structured", "latex"}))
            ->capture_default_str();
    };
    add_common(app.add_subcommand("validate", "check a fan and report its Calabi-Yau data"), true);
    add_common(app.add_subcommand("charges", "charge matrix"), true);
    add_common(app.add_subcommand("periods", "single-logarithm period series f_a"), true);
    add_common(app.add_subcommand("mirror-map", "mirror map q(qc)"), true);
    add_common(app.add_subcommand("invert", "inverse mirror map qc(q)"), true);
    add_common(app.add_subcommand("open-gw", "correction series and open invariants"), true);
    auto *eq = app.add_subcommand("mirror-eq", "corrected mirror equation");
    add_common(eq, true);
    eq->add_option("--form", config.form, "flat or cform")
        ->check(CLI::IsMember({"flat", "cform"}))
        ->capture_default_str();
    auto *disc = app.add_subcommand("discriminant", "strata of the discriminant locus");
    add_common(disc, true);
    disc->add_option("--k2", config.k2, "the constant K2")->capture_default_str();
    auto *verify = app.add_subcommand("verify", "compare against a bundled reference example");
    add_common(verify, false);
    verify->add_option("--example", config.example, "reference id (kp1, conifold, kp2, kp1xp1)");
    verify->add_option("--order", config.order, "comparison order (total degree)")->capture_default_str();
    verify->add_option("--reference", config.reference_path, "reference document to use instead of the bundled one");
    verify->add_flag("--export", config.export_reference, "print the reference document and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    config.subcommand = app.get_subcommands().front()->get_name();
    config.format = format == "structured" ? OutputFormat::Structured
                    : format == "latex"    ? OutputFormat::Latex
                                           : OutputFormat::Text;
    if (!config.input.empty() && !config.example.empty()) {
        err << "usage error: give either a fan file or --example, not both\n";
        return kExitUsage;
    }
    return run(config, out, err);
}

} // namespace syzmirror::cli
