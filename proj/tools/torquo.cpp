// torquo command-line front-end. Talks to the engine through the C interface only.

#include <torquo/torquo.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

enum Exit : int {
    EXIT_OK = 0,
    EXIT_INVALID = 1,
    EXIT_INPUT = 2,
    EXIT_NOT_POSITIVE = 3,
    EXIT_CONDITION_B = 4,
    EXIT_NOT_IN_CONE = 5,
    EXIT_NOT_A_CIRCUIT = 6,
    EXIT_INTERNAL = 7,
};

int exit_for(torquo_status s)
{
    switch (s) {
    case TORQUO_OK: return EXIT_OK;
    case TORQUO_ERR_INVALID_FAN:
    case TORQUO_ERR_SURGERY: return EXIT_INVALID;
    case TORQUO_ERR_PARSE:
    case TORQUO_ERR_INVALID_ARGUMENT:
    case TORQUO_ERR_NOT_A_RELATION:
    case TORQUO_ERR_NOT_FOUND: return EXIT_INPUT;
    case TORQUO_ERR_NOT_POSITIVE: return EXIT_NOT_POSITIVE;
    case TORQUO_ERR_CONDITION_B: return EXIT_CONDITION_B;
    case TORQUO_ERR_CLASS_NOT_IN_CONE: return EXIT_NOT_IN_CONE;
    case TORQUO_ERR_NOT_A_CIRCUIT: return EXIT_NOT_A_CIRCUIT;
    case TORQUO_ERR_INTERNAL: return EXIT_INTERNAL;
    }
    return EXIT_INTERNAL;
}

// Carries an exit code out of a command.
struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void fail(torquo_status s, const std::string& context)
{
    std::string msg = torquo_last_error();
    throw Failure{exit_for(s), context + (msg.empty() ? std::string(torquo_status_name(s)) : msg)};
}

struct FanDeleter {
    void operator()(torquo_fan* f) const { torquo_fan_free(f); }
};
using FanHandle = std::unique_ptr<torquo_fan, FanDeleter>;

struct CString {
    char* p = nullptr;
    ~CString() { torquo_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Options {
    bool json = false;
    std::optional<long long> seed;
    std::size_t max_dim = 8;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{EXIT_INPUT, "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Failure{EXIT_INPUT, "cannot write " + path};
        out << text << '\n';
        if (!out.flush()) throw Failure{EXIT_INPUT, "cannot write " + path};
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Failure{EXIT_INPUT, "cannot write " + path + ": " + ec.message()};
}

void check_rank(const torquo_fan* fan, const Options& opt, const std::string& source)
{
    if (torquo_fan_rank(fan) > opt.max_dim)
        throw Failure{EXIT_INPUT, source + ": rank " + std::to_string(torquo_fan_rank(fan)) +
                                      " exceeds TORQUO_MAX_DIM=" + std::to_string(opt.max_dim)};
}

FanHandle load_fan(const std::string& path, const Options& opt)
{
    std::string text = read_file(path);
    torquo_fan* raw = nullptr;
    torquo_status s = torquo_fan_parse(text.c_str(), &raw);
    if (s != TORQUO_OK) fail(s, path + ": ");
    FanHandle fan(raw);
    check_rank(fan.get(), opt, path);
    return fan;
}

// A class argument is a file, or inline JSON.
std::string load_class(const std::string& arg)
{
    if (std::filesystem::exists(arg)) return read_file(arg);
    auto first = arg.find_first_not_of(" \t");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
    throw Failure{EXIT_INPUT, "cannot read class " + arg};
}

std::string fan_json(const torquo_fan* fan)
{
    CString out;
    torquo_status s = torquo_fan_to_json(fan, &out.p);
    if (s != TORQUO_OK) fail(s, "");
    Json j = Json::parse(out.str());
    auto rows = [](const Json& a) {
        std::string text = "[";
        for (std::size_t i = 0; i < a.size(); ++i) text += (i ? ",\n    " : "\n    ") + a[i].dump();
        return text + (a.empty() ? "]" : "\n  ]");
    };
    return "{\n  \"rank\": " + j["rank"].dump() + ",\n  \"rays\": " + rows(j["rays"]) + ",\n  \"max_cones\": " +
           rows(j["max_cones"]) + "\n}";
}

std::vector<int> parse_indices(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Failure{EXIT_INPUT, "bad ray index list '" + text + "'"};
        }
    }
    if (out.empty()) throw Failure{EXIT_INPUT, "empty ray index list"};
    return out;
}

std::string join(const Json& arr, const char* sep = ", ")
{
    std::string out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out += sep;
        out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
    }
    return out;
}

std::string vec(const Json& coeffs) { return "(" + join(coeffs) + ")"; }
std::string set(const Json& rays) { return "{" + join(rays, ",") + "}"; }
const char* yes(const Json& b) { return b.is_boolean() && b.get<bool>() ? "yes" : "no"; }

// ---- check -----------------------------------------------------------------

int cmd_check(const std::string& path, const Options& opt)
{
    FanHandle fan = load_fan(path, opt);
    CString report;
    torquo_status s = torquo_fan_check(fan.get(), &report.p);
    if (!report.p) fail(s, path + ": ");
    Json r = Json::parse(report.str());
    if (opt.json) {
        std::cout << r.dump(2) << '\n';
    } else {
        std::cout << "fan: rank " << torquo_fan_rank(fan.get()) << ", " << torquo_fan_num_rays(fan.get()) << " rays, "
                  << torquo_fan_num_max_cones(fan.get()) << " maximal cones\n"
                  << "  simplicial:  " << yes(r["simplicial"]) << '\n'
                  << "  complete:    " << yes(r["complete"]) << '\n'
                  << "  faces meet:  " << yes(r["faces_ok"]) << '\n'
                  << "  projective:  " << yes(r["projective"]) << '\n'
                  << "  smooth:      " << yes(r["smooth"]) << '\n';
        if (!r["witness"].is_null()) std::cout << "witness: " << r["witness"].get<std::string>() << '\n';
        if (!r["uncovered_point"].is_null()) std::cout << "uncovered point: " << vec(r["uncovered_point"]) << '\n';
        std::cout << (s == TORQUO_OK ? "accepted\n" : "rejected\n");
    }
    return exit_for(s);
}

// ---- classes ---------------------------------------------------------------

int cmd_classes(const std::string& path, const Options& opt)
{
    FanHandle fan = load_fan(path, opt);
    CString out;
    torquo_status s = torquo_fan_classes(fan.get(), &out.p);
    if (s != TORQUO_OK) fail(s, path + ": ");
    Json r = Json::parse(out.str());
    if (opt.json) {
        std::cout << r.dump(2) << '\n';
        return EXIT_OK;
    }
    std::cout << "rho = " << r["rho"].get<int>() << '\n';
    std::cout << "Mori cone generators (" << r["mori_generators"].size() << "):\n";
    for (const auto& g : r["mori_generators"]) std::cout << "  " << vec(g["coeffs"]) << '\n';
    std::cout << "walls (" << r["walls"].size() << "):\n";
    for (const auto& w : r["walls"])
        std::cout << "  " << set(w["rays"]) << "  between cones " << w["adjacent"][0].get<long>() << " and "
                  << w["adjacent"][1].get<long>() << "  class " << vec(w["class"]["coeffs"]) << '\n';
    return EXIT_OK;
}

// ---- family ----------------------------------------------------------------

void print_family(const Json& r)
{
    const std::string status = r["status"].get<std::string>();
    std::cout << "class " << vec(r["class"]["coeffs"]) << " on a fan with rho_X = " << r["rho_X"].get<int>() << '\n';

    if (status == "not_a_relation") {
        std::cout << "not a relation: " << r["message"].get<std::string>() << '\n';
        return;
    }
    if (r["positive"].get<bool>()) {
        const Json& f = r["family"];
        if (!f.is_null())
            std::cout << "positivity: strictly positive on " << set(f["support"]) << ", h = " << f["h"].get<int>()
                      << '\n';
        else
            std::cout << "positivity: positive\n";
    } else {
        std::cout << "positivity: not positive (" << r["message"].get<std::string>() << ")\n";
    }
    if (status == "not_a_circuit") std::cout << "support is not a circuit: " << r["message"].get<std::string>() << '\n';
    if (!r["in_cone"].get<bool>()) std::cout << "the class is not in NE(X)\n";

    const Json& cb = r["condition_b"];
    if (cb["checked"].get<bool>()) {
        if (cb["holds"].get<bool>()) {
            std::cout << "condition (b): holds\n";
        } else {
            const Json& v = cb["violation"];
            std::cout << "condition (b): fails; cone " << set(v["tau"]) << " with the support minus ray "
                      << v["missing_ray"].get<int>() << " gives " << set(v["attempted_cone"])
                      << ", which is not a cone of the fan\n";
        }
    }
    if (!r["zero_divisors"].empty()) std::cout << "divisors with intersection zero: " << set(r["zero_divisors"]) << '\n';

    const Json& cert = r["certificates"];
    if (r["extremal"].is_boolean() && r["extremal"].get<bool>())
        std::cout << "extremality: geometric extremal ray; nef divisor " << vec(cert["nef_divisor"]["coeffs"])
                  << " vanishes on wall classes " << set(cert["zero_set"]) << '\n';
    else if (r["extremal"].is_boolean())
        std::cout << "extremality: not an extremal ray\n";
    if (r["interior"].is_boolean() && r["interior"].get<bool>())
        std::cout << "note: the class lies in the interior of NE(X); the only contraction of it is X -> point\n";

    const Json& q = r["quotient"];
    if (!q.is_null()) {
        std::cout << "quotient: rho_X " << r["rho_X"].get<int>() << " -> rho_Y' " << q["rho_Y"].get<int>()
                  << ", fiber dimension f_V = " << q["fiber_dim"].get<int>() << ", quotient rank "
                  << q["rank"].get<int>() << (q["flat"].get<bool>() ? ", flat" : ", not flat") << '\n';
    }
}

int cmd_family(const std::string& path, const std::string& class_arg, const std::string& emit, bool trace,
               const Options& opt)
{
    FanHandle fan = load_fan(path, opt);
    std::string cls = load_class(class_arg);
    CString out;
    torquo_status s = torquo_family_analyze(fan.get(), cls.c_str(), trace ? 1 : 0, &out.p);
    if (!out.p) fail(s, path + ": ");
    Json r = Json::parse(out.str());
    if (!emit.empty() && !r["certificates"]["quotient_fan"].is_null())
        write_file(emit, r["certificates"]["quotient_fan"].dump(2));
    if (opt.json) {
        std::cout << r.dump(2) << '\n';
    } else {
        print_family(r);
        if (trace && r.contains("trace")) std::cout << "induction trace:\n" << r["trace"].dump(2) << '\n';
    }
    return exit_for(s);
}

// ---- quotient --------------------------------------------------------------

int cmd_quotient(const std::string& path, const std::string& class_arg, const std::string& output, const Options& opt)
{
    FanHandle fan = load_fan(path, opt);
    std::string cls = load_class(class_arg);
    torquo_fan* raw = nullptr;
    torquo_status s = torquo_quotient(fan.get(), cls.c_str(), &raw);
    if (s != TORQUO_OK) fail(s, path + ": ");
    FanHandle quotient(raw);
    std::string text = fan_json(quotient.get());
    write_file(output, text);
    if (opt.json)
        std::cout << Json{{"output", output}, {"fan", Json::parse(text)}}.dump(2) << '\n';
    else
        std::cout << "quotient fan: rank " << torquo_fan_rank(quotient.get()) << ", "
                  << torquo_fan_num_rays(quotient.get()) << " rays -> " << output << '\n';
    return EXIT_OK;
}

// ---- construct -------------------------------------------------------------

int emit_constructed(FanHandle fan, const std::string& output, const Options& opt)
{
    check_rank(fan.get(), opt, "result");
    CString report;
    torquo_status s = torquo_fan_check(fan.get(), &report.p);
    if (s != TORQUO_OK) fail(s, "construction produced an invalid fan: ");
    std::string text = fan_json(fan.get());
    if (output.empty()) {
        std::cout << text << '\n';
    } else {
        write_file(output, text);
        if (opt.json)
            std::cout << Json{{"output", output}, {"fan", Json::parse(text)}}.dump(2) << '\n';
        else
            std::cout << "wrote " << output << ": rank " << torquo_fan_rank(fan.get()) << ", "
                      << torquo_fan_num_rays(fan.get()) << " rays\n";
    }
    return EXIT_OK;
}

template <class Op>
FanHandle take(Op&& op, const std::string& stage)
{
    torquo_fan* raw = nullptr;
    torquo_status s = op(&raw);
    if (s != TORQUO_OK) fail(s, stage + ": ");
    return FanHandle(raw);
}

// ---- gallery ---------------------------------------------------------------

int cmd_gallery_list(const Options& opt)
{
    CString out;
    torquo_status s = torquo_gallery_list(&out.p);
    if (s != TORQUO_OK) fail(s, "");
    Json list = Json::parse(out.str());
    if (opt.json) {
        std::cout << list.dump(2) << '\n';
        return EXIT_OK;
    }
    for (const auto& v : list) {
        std::string fano = v["fano"].is_null() ? "?" : (v["fano"].get<bool>() ? "yes" : "no");
        std::printf("%-16s dim %d  rho %d  rays %2d  smooth %-3s  Fano %-3s  %s\n", v["name"].get<std::string>().c_str(),
                    v["dim"].get<int>(), v["rho"].get<int>(), v["rays"].get<int>(), yes(v["smooth"]), fano.c_str(),
                    v["description"].get<std::string>().c_str());
    }
    return EXIT_OK;
}

int cmd_gallery_emit(const std::string& name, std::size_t steps, const std::string& output, const Options& opt)
{
    FanHandle fan = take(
        [&](torquo_fan** out) {
            return name == "random" ? torquo_gallery_random(steps, static_cast<unsigned long long>(opt.seed.value_or(0)), out)
                                    : torquo_gallery_emit(name.c_str(), out);
        },
        name);
    std::string text = fan_json(fan.get());
    if (output.empty())
        std::cout << text << '\n';
    else
        write_file(output, text);
    return EXIT_OK;
}

std::size_t max_dim_from_env()
{
    const char* env = std::getenv("TORQUO_MAX_DIM");
    if (!env || !*env) return 8;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end || v < 1) throw Failure{EXIT_INPUT, std::string("TORQUO_MAX_DIM must be a positive integer, got '") + env + "'"};
    return static_cast<std::size_t>(v);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"torquo: extremal rays and quotient fibrations of toric varieties"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(torquo_version()));

    Options opt;
    long long seed = 0;
    app.add_flag("--json", opt.json, "machine-readable JSON output");
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized constructions");

    std::string fan_path, class_arg, output, emit;
    bool trace = false;

    auto* check = app.add_subcommand("check", "validate a fan");
    check->add_option("fan", fan_path, "fan JSON file")->required();

    auto* classes = app.add_subcommand("classes", "Picard number, walls and Mori cone generators");
    classes->add_option("fan", fan_path, "fan JSON file")->required();

    auto* family = app.add_subcommand("family", "analyze the family of a curve class");
    family->add_option("fan", fan_path, "fan JSON file")->required();
    family->add_option("class", class_arg, "class JSON file or inline JSON")->required();
    family->add_option("--emit-quotient", emit, "write the quotient fan here");
    family->add_flag("--trace", trace, "include the inductive verification trace");

    auto* quotient = app.add_subcommand("quotient", "build the quotient fan");
    quotient->add_option("fan", fan_path, "fan JSON file")->required();
    quotient->add_option("class", class_arg, "class JSON file or inline JSON")->required();
    quotient->add_option("-o,--output", output, "output fan file")->required();

    auto* construct = app.add_subcommand("construct", "build fans");
    construct->require_subcommand(1);
    std::size_t pn_n = 0;
    std::string second_path, cone_list, negative_list;
    auto* pn = construct->add_subcommand("pn", "projective space");
    pn->add_option("n", pn_n, "dimension")->required()->check(CLI::PositiveNumber);
    pn->add_option("-o,--output", output, "output fan file");
    auto* product = construct->add_subcommand("product", "product of two fans");
    product->add_option("first", fan_path)->required();
    product->add_option("second", second_path)->required();
    product->add_option("-o,--output", output, "output fan file");
    auto* blowup = construct->add_subcommand("blowup", "star subdivision of a cone");
    blowup->add_option("fan", fan_path)->required();
    blowup->add_option("--cone", cone_list, "comma-separated ray indices")->required();
    blowup->add_option("-o,--output", output, "output fan file");
    auto* flip = construct->add_subcommand("flip", "circuit exchange");
    flip->add_option("fan", fan_path)->required();
    flip->add_option("--negative", negative_list, "comma-separated rays of the negative side")->required();
    flip->add_option("-o,--output", output, "output fan file");

    auto* gallery = app.add_subcommand("gallery", "named example varieties");
    gallery->require_subcommand(1);
    auto* list = gallery->add_subcommand("list", "list the gallery");
    std::string name;
    std::size_t steps = 3;
    auto* emit_cmd = gallery->add_subcommand("emit", "print a gallery fan (or 'random', driven by --seed)");
    emit_cmd->add_option("name", name)->required();
    emit_cmd->add_option("--steps", steps, "star subdivisions for 'random'");
    emit_cmd->add_option("-o,--output", output, "output fan file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? EXIT_OK : EXIT_INPUT;
    }
    if (seed_opt->count()) opt.seed = seed;

    try {
        opt.max_dim = max_dim_from_env();
        if (*check) return cmd_check(fan_path, opt);
        if (*classes) return cmd_classes(fan_path, opt);
        if (*family) return cmd_family(fan_path, class_arg, emit, trace, opt);
        if (*quotient) return cmd_quotient(fan_path, class_arg, output, opt);
        if (*construct) {
            if (*pn) {
                if (pn_n > opt.max_dim) throw Failure{EXIT_INPUT, "n exceeds TORQUO_MAX_DIM"};
                return emit_constructed(
                    take([&](torquo_fan** out) { return torquo_construct_projective_space(pn_n, out); }, "pn"), output,
                    opt);
            }
            FanHandle base = load_fan(fan_path, opt);
            if (*product) {
                FanHandle other = load_fan(second_path, opt);
                return emit_constructed(
                    take([&](torquo_fan** out) { return torquo_construct_product(base.get(), other.get(), out); },
                         "product"),
                    output, opt);
            }
            if (*blowup) {
                auto cone = parse_indices(cone_list);
                return emit_constructed(
                    take([&](torquo_fan** out) {
                        return torquo_construct_blowup(base.get(), cone.data(), cone.size(), out);
                    }, "blowup"),
                    output, opt);
            }
            auto negative = parse_indices(negative_list);
            return emit_constructed(
                take([&](torquo_fan** out) {
                    return torquo_construct_flip(base.get(), negative.data(), negative.size(), out);
                }, "flip"),
                output, opt);
        }
        if (*list) return cmd_gallery_list(opt);
        return cmd_gallery_emit(name, steps, output, opt);
    } catch (const Failure& f) {
        if (opt.json)
            std::cout << Json{{"error", f.message}, {"exit_code", f.code}}.dump(2) << '\n';
        std::cerr << "torquo: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "torquo: internal error: " << e.what() << '\n';
        return EXIT_INTERNAL;
    }
}
