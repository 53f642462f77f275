// quadrings: command-line front end for binary quadratic forms, quadratic
// algebras with traceable modules, composition and class groups.
//
// Every subcommand prints JSON (the contract) or, with --format text, a
// stable human-readable rendering.  Usage errors exit 2; domain errors exit 1
// with {"schema":1,"error":<code>,"message":...} on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <quadrings/quadrings.hpp>

namespace q = quadrings;
using q::json;

namespace {

q::Ring parse_ring(const std::string& s) {
    try {
        if (s == "Z") return q::Ring::integers();
        if (s.rfind("zmod:", 0) == 0) return q::Ring::mod(q::Int(s.substr(5)));
        if (s.rfind("Z/", 0) == 0) return q::Ring::mod(q::Int(s.substr(2)));
    } catch (const q::Error&) {
        throw; // modulus < 2 and similar: domain error, keep the typed payload
    } catch (const std::exception&) {
        // fall through to the usage error below
    }
    throw CLI::ValidationError("--ring", "expected Z or zmod:<n>, got \"" + s + "\"");
}

std::vector<q::Int> parse_ints(const std::string& s, size_t count, const std::string& flag) {
    std::vector<q::Int> out;
    std::stringstream ss(s);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) {
            size_t b = item.find_first_not_of(" \t");
            size_t e = item.find_last_not_of(" \t");
            if (b == std::string::npos) throw std::runtime_error("empty entry");
            out.emplace_back(item.substr(b, e - b + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected " + std::to_string(count) +
                                             " comma-separated integers, got \"" + s + "\"");
    }
    if (out.size() != count)
        throw CLI::ValidationError(flag, "expected " + std::to_string(count) +
                                             " comma-separated integers, got \"" + s + "\"");
    return out;
}

q::BQForm parse_form(const std::string& ring, const std::string& triple,
                     const std::string& flavor) {
    q::Ring R = parse_ring(ring);
    std::vector<q::Int> v = parse_ints(triple, 3, "--form");
    return q::BQForm(q::RingElem(R, v[0]), q::RingElem(R, v[1]), q::RingElem(R, v[2]),
                     q::flavor_from_name(flavor));
}

/** JSON argument: inline text, @file, or "-" for stdin. */
json read_json_arg(const std::string& s, const std::string& flag) {
    std::string text = s;
    if (s == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else if (!s.empty() && s[0] == '@') {
        std::ifstream in(s.substr(1));
        if (!in) throw CLI::ValidationError(flag, "cannot open file \"" + s.substr(1) + "\"");
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw CLI::ValidationError(flag, std::string("invalid JSON: ") + e.what());
    }
}

void emit(json payload, const std::string& format, const std::string& text) {
    if (format == "text") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    json out{{"schema", 1}};
    out.update(payload);
    std::cout << out.dump() << "\n";
}

std::string form_text(const q::BQForm& f) {
    std::ostringstream os;
    os << f;
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary quadratic forms <-> quadratic algebras with modules"};
    app.require_subcommand(1);

    int jobs = 1;
    app.add_option("--jobs", jobs,
                   "worker processes; results and ordering are identical for any value")
        ->envname("QUADRINGS_JOBS")
        ->check(CLI::PositiveNumber);

    std::string ring = "Z", flavor = "twisted", format = "json";
    std::string form_arg, second_arg, matrix_arg, unit_arg = "1", pair_arg, values_arg, to_arg;
    std::string disc_arg, verify_flavor = "all", max_modulus_arg = "5";
    bool use_global = false;

    auto add_common = [&](CLI::App* sub, bool with_flavor = true) {
        sub->add_option("--ring", ring, "base ring: Z or zmod:<n>")->capture_default_str();
        if (with_flavor)
            sub->add_option("--flavor", flavor, "form flavor: plain, twisted or linear")
                ->capture_default_str();
        sub->add_option("--format", format, "output format: json or text")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
    };

    CLI::App* cmd_disc = app.add_subcommand("disc", "discriminant b^2 - 4ac of a form");
    add_common(cmd_disc);
    cmd_disc->add_option("-f,--form", form_arg, "coefficients a,b,c")->required();

    CLI::App* cmd_act = app.add_subcommand("act", "apply a change of variables to a form");
    add_common(cmd_act);
    cmd_act->add_option("-f,--form", form_arg, "coefficients a,b,c")->required();
    cmd_act->add_option("-g,--matrix", matrix_arg, "matrix entries k,l,m,n (rows)")->required();
    cmd_act->add_option("-u,--unit", unit_arg, "unit scaling (linear flavor only)")
        ->capture_default_str();

    CLI::App* cmd_reduce =
        app.add_subcommand("reduce", "reduced representative of a positive definite form over Z");
    add_common(cmd_reduce);
    cmd_reduce->add_option("-f,--form", form_arg, "coefficients a,b,c")->required();

    CLI::App* cmd_to_pair =
        app.add_subcommand("to-pair", "algebra and traceable module attached to a form");
    add_common(cmd_to_pair);
    cmd_to_pair->add_option("-f,--form", form_arg, "coefficients a,b,c")->required();

    CLI::App* cmd_to_form = app.add_subcommand("to-form", "form attached to an algebra-module pair");
    cmd_to_form->add_option("--pair", pair_arg, "pair JSON (inline, @file or - for stdin)")
        ->required();
    cmd_to_form->add_flag("--global", use_global,
                          "use the shift-independent construction (no normalization)");
    cmd_to_form->add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    CLI::App* cmd_compose = app.add_subcommand("compose", "Gauss composition of two forms over Z");
    add_common(cmd_compose);
    cmd_compose->add_option("-f,--form", form_arg, "first form a,b,c")->required();
    cmd_compose->add_option("-g,--second", second_arg, "second form a,b,c")->required();

    CLI::App* cmd_classgroup =
        app.add_subcommand("classgroup", "form class group of a negative discriminant");
    cmd_classgroup->add_option("-D,--disc", disc_arg, "discriminant (< 0, = 0 or 1 mod 4)")
        ->required();
    cmd_classgroup->add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    CLI::App* cmd_realize =
        app.add_subcommand("realize-ideal", "fractional ideal isomorphic to a module over Z");
    cmd_realize->add_option("--pair", pair_arg, "pair JSON (inline, @file or - for stdin)")
        ->required();
    cmd_realize->add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    CLI::App* cmd_kneser =
        app.add_subcommand("kneser", "quadratic map values q(x), q(y), q(x+y) of a form");
    add_common(cmd_kneser);
    CLI::Option* opt_kf = cmd_kneser->add_option("-f,--form", form_arg, "coefficients a,b,c");
    CLI::Option* opt_kv =
        cmd_kneser->add_option("--values", values_arg, "values q1,q2,q12 to turn into a form");
    opt_kf->excludes(opt_kv);
    opt_kv->excludes(opt_kf);

    CLI::App* cmd_base = app.add_subcommand("base-change", "reduce a form or pair from Z mod n");
    add_common(cmd_base);
    CLI::Option* opt_bf = cmd_base->add_option("-f,--form", form_arg, "coefficients a,b,c");
    CLI::Option* opt_bp =
        cmd_base->add_option("--pair", pair_arg, "pair JSON (inline, @file or - for stdin)");
    cmd_base->add_option("--to", to_arg, "target ring zmod:<n>")->required();
    opt_bf->excludes(opt_bp);
    opt_bp->excludes(opt_bf);

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "exhaustively check the form <-> pair bijection over a finite ring");
    cmd_verify->add_option("--ring", ring, "finite base ring zmod:<n>")->required();
    cmd_verify->add_option("--flavor", verify_flavor, "plain, twisted, linear or all")
        ->capture_default_str();
    cmd_verify->add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    cmd_verify
        ->add_option("--max-modulus", max_modulus_arg,
                     "largest modulus the exhaustive search will accept")
        ->capture_default_str();

    // let --jobs (defined on the top-level app) appear after a subcommand name
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*cmd_disc) {
            q::BQForm f = parse_form(ring, form_arg, flavor);
            q::RingElem d = q::discriminant(f);
            emit(json{{"ring", q::ring_to_json(f.ring())}, {"disc", q::elem_to_json(d)}}, format,
                 d.str());
        } else if (*cmd_act) {
            q::BQForm f = parse_form(ring, form_arg, flavor);
            std::vector<q::Int> m = parse_ints(matrix_arg, 4, "--matrix");
            q::GL2 g = q::GL2::from_ints(f.ring(), m[0], m[1], m[2], m[3]);
            q::ActionMode mode = f.flavor() == q::Flavor::plain ? q::ActionMode::plain
                                                                : q::ActionMode::twisted;
            q::BQForm out = q::apply_gl2(f, g, mode);
            if (f.flavor() == q::Flavor::linear) {
                q::RingElem u(f.ring(), parse_ints(unit_arg, 1, "--unit")[0]);
                if (!(u == q::one(f.ring()))) out = q::apply_gl1(out, u);
            } else if (unit_arg != "1") {
                throw q::FlavorError("act: -u/--unit applies to linear forms only");
            }
            emit(q::form_to_json(out), format, form_text(out));
        } else if (*cmd_reduce) {
            q::BQForm f = parse_form(ring, form_arg, flavor);
            q::Reduced red = q::reduce_posdef(f);
            json j = q::form_to_json(red.form);
            j["witness"] = q::mat_to_json(red.witness.mat());
            emit(j, format, form_text(red.form));
        } else if (*cmd_to_pair) {
            q::BQForm f = parse_form(ring, form_arg, flavor);
            q::CorrespondencePair p = q::form_to_pair(f);
            std::string text = "q = " + p.algebra().q().str() + "\nr = " + p.algebra().r().str() +
                               "\nT = [[" + p.module.T().at(0, 0).str() + "," +
                               p.module.T().at(0, 1).str() + "],[" + p.module.T().at(1, 0).str() +
                               "," + p.module.T().at(1, 1).str() + "]]";
            emit(q::pair_to_json(p), format, text);
        } else if (*cmd_to_form) {
            q::CorrespondencePair p = q::json_to_pair(read_json_arg(pair_arg, "--pair"));
            if (use_global) {
                q::BQForm f = q::pair_to_form_global(p);
                emit(q::form_to_json(f), format, form_text(f));
            } else {
                q::FormWithShift fs = q::pair_to_form(p);
                json j = q::form_to_json(fs.form);
                j["shift"] = q::elem_to_json(fs.shift);
                emit(j, format, form_text(fs.form) + "\nshift = " + fs.shift.str());
            }
        } else if (*cmd_compose) {
            q::BQForm f1 = parse_form(ring, form_arg, flavor);
            q::BQForm f2 = parse_form(ring, second_arg, flavor);
            q::BQForm out = q::compose_forms(f1, f2);
            emit(q::form_to_json(out), format, form_text(out));
        } else if (*cmd_classgroup) {
            q::ClassGroup G = q::class_group(parse_ints(disc_arg, 1, "--disc")[0]);
            emit(q::classgroup_to_json(G), format, q::classgroup_to_text(G));
        } else if (*cmd_realize) {
            q::CorrespondencePair p = q::json_to_pair(read_json_arg(pair_arg, "--pair"));
            q::IdealLattice I = q::realize_as_ideal(p);
            std::ostringstream os;
            os << I;
            emit(q::ideal_to_json(I), format, os.str());
        } else if (*cmd_kneser) {
            if (!values_arg.empty()) {
                q::Ring R = parse_ring(ring);
                std::vector<q::Int> v = parse_ints(values_arg, 3, "--values");
                q::QuadraticMap qm(q::RingElem(R, v[0]), q::RingElem(R, v[1]),
                                   q::RingElem(R, v[2]));
                q::BQForm f = q::quadratic_map_to_form(qm, q::flavor_from_name(flavor));
                emit(q::form_to_json(f), format, form_text(f));
            } else if (!form_arg.empty()) {
                q::BQForm f = parse_form(ring, form_arg, flavor);
                q::QuadraticMap qm = q::form_to_quadratic_map(f);
                json j{{"ring", q::ring_to_json(f.ring())},
                       {"q1", q::elem_to_json(qm.q1)},
                       {"q2", q::elem_to_json(qm.q2)},
                       {"q12", q::elem_to_json(qm.q12)},
                       {"polar", q::elem_to_json(qm.polar12())}};
                emit(j, format, "q1 = " + qm.q1.str() + "\nq2 = " + qm.q2.str() +
                                    "\nq12 = " + qm.q12.str() +
                                    "\npolar = " + qm.polar12().str());
            } else {
                throw CLI::ValidationError("kneser", "needs -f or --values");
            }
        } else if (*cmd_base) {
            q::Ring target = parse_ring(to_arg);
            if (!pair_arg.empty()) {
                q::CorrespondencePair p = q::json_to_pair(read_json_arg(pair_arg, "--pair"));
                q::CorrespondencePair out = q::base_change(p, target);
                emit(q::pair_to_json(out), format, "reduced pair mod " + target.str());
            } else if (!form_arg.empty()) {
                q::BQForm f = parse_form(ring, form_arg, flavor);
                q::BQForm out = q::base_change(f, target);
                emit(q::form_to_json(out), format, form_text(out));
            } else {
                throw CLI::ValidationError("base-change", "needs -f or --pair");
            }
        } else if (*cmd_verify) {
            q::Ring R = parse_ring(ring);
            std::vector<q::Flavor> flavors;
            if (verify_flavor == "all")
                flavors = {q::Flavor::plain, q::Flavor::twisted, q::Flavor::linear};
            else
                flavors = {q::flavor_from_name(verify_flavor)};
            q::CensusOptions opt;
            opt.max_modulus = parse_ints(max_modulus_arg, 1, "--max-modulus")[0];
            bool all_pass = true;
            json reports = json::array();
            std::string text;
            for (q::Flavor fl : flavors) {
                q::BijectionReport rep = q::verify_bijection(R, fl, opt);
                all_pass = all_pass && rep.pass;
                reports.push_back(q::report_to_json(rep));
                text += q::render_report(rep);
            }
            emit(json{{"pass", all_pass}, {"reports", reports}}, format, text);
            return all_pass ? 0 : 1;
        }
        return 0;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const q::Error& e) {
        std::cerr << q::error_to_json(e).dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"schema", 1}, {"error", "internal"}, {"message", e.what()}}.dump()
                  << "\n";
        return 3;
    }
}
