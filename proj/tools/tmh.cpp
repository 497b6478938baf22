#include "tmh/errors.hpp"
#include "tmh/mirror.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tmh;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PolySurface load_surface(const std::string& name)
{
    for (const char* p : {"bl2", "bl3", "cp2", "p1p1", "f1"})
        if (name == p)
            return preset_surface(name);
    if (!fs::exists(name))
        throw UsageError("unknown surface '" + name + "' (preset bl2|bl3|cp2|p1p1|f1 or a JSON file)");
    return load_surface_file(name);
}

BundleClass bundle_arg(const std::string& text, const PolySurface& s)
{
    BundleClass b;
    try {
        b = parse_bundle(text);
    } catch (const std::exception& e) {
        throw UsageError("cannot parse bundle '" + text + "': " + e.what());
    }
    if (b.size() != s.rank())
        throw UsageError("bundle '" + text + "' has " + std::to_string(b.size()) + " entries, the surface needs " +
                         std::to_string(s.rank()));
    return b;
}

std::vector<BundleClass> load_collection(const std::string& arg, const PolySurface& s)
{
    if (arg == "preset") {
        try {
            return preset_exceptional_collection(s);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string(e.what()) + "; pass --collection FILE");
        }
    }
    std::ifstream in(arg);
    if (!in)
        throw UsageError("cannot read collection file '" + arg + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError("collection file is not JSON: " + std::string(e.what()));
    }
    if (j.is_object())
        j = j.value("collection", nlohmann::json::array());
    if (!j.is_array() || j.empty())
        throw UsageError("collection file needs a nonempty list of bundles");
    std::vector<BundleClass> out;
    for (const auto& b : j) {
        if (b.is_string()) {
            out.push_back(bundle_arg(b.get<std::string>(), s));
        } else if (b.is_array()) {
            BundleClass c;
            for (const auto& x : b)
                c.coeffs.push_back(x.get<long>());
            if (c.size() != s.rank())
                throw UsageError("bundle " + c.str() + " has the wrong length for this surface");
            out.push_back(c);
        } else {
            throw UsageError("bundles are strings \"a,b,c\" or integer arrays");
        }
    }
    return out;
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Morse homotopy categories on toric Fano surfaces"};
    app.require_subcommand(1);

    std::string surface_arg = "bl2", from, to, collection = "preset", format = "text", output, svg_dir;
    double grid_tol = 1e-9;

    auto* homs = app.add_subcommand("homs", "morphism space between two line bundles");
    homs->add_option("--surface", surface_arg, "preset (bl2, bl3, cp2, p1p1, f1) or JSON file")->required();
    homs->add_option("--from", from, "source bundle, e.g. 0,0,0")->required();
    homs->add_option("--to", to, "target bundle")->required();
    homs->add_option("--format", format, "text | json | svg")->check(CLI::IsMember({"text", "json", "svg"}));
    homs->add_option("-o,--output", output, "write here instead of stdout");

    auto* compose = app.add_subcommand("compose", "m2 composition table of a collection");
    compose->add_option("--surface", surface_arg, "preset or JSON file")->required();
    compose->add_option("--collection", collection, "'preset' or JSON file");
    compose->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    compose->add_option("--svg-dir", svg_dir, "write one SVG per triple here");
    compose->add_option("--grid-tol", grid_tol, "tolerance of the grid certificate")->check(CLI::PositiveNumber);
    compose->add_option("-o,--output", output, "write here instead of stdout");

    auto* verify = app.add_subcommand("verify", "run every check against the sheaf side");
    verify->add_option("--surface", surface_arg, "preset or JSON file")->required();
    verify->add_option("--collection", collection, "'preset' or JSON file");
    verify->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--grid-tol", grid_tol, "tolerance of the grid certificate")->check(CLI::PositiveNumber);
    verify->add_option("-o,--output", output, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        PolySurface s = load_surface(surface_arg);
        ToricGeometry g(s);

        if (*homs) {
            HomSpace h = hom_space(g, bundle_arg(from, s), bundle_arg(to, s));
            if (format == "json")
                emit(to_json(h, s).dump(2) + "\n", output);
            else if (format == "svg")
                emit(hom_svg(h, s), output);
            else
                emit(to_text(h, s), output);
            return 0;
        }

        auto bundles = load_collection(collection, s);
        if (*compose) {
            HomTable t = hom_table(g, bundles);
            CompositionEngine eng(g, grid_tol);
            auto tables = eng.compose_table(t);
            if (format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& tt : tables)
                    j.push_back(to_json(tt, t, s));
                emit(j.dump(2) + "\n", output);
            } else {
                std::string text;
                for (const auto& tt : tables)
                    text += to_text(tt, t, s);
                emit(text, output);
            }
            if (!svg_dir.empty()) {
                fs::create_directories(svg_dir);
                for (const auto& tt : tables) {
                    std::ostringstream name;
                    name << "triple_" << tt.i << "_" << tt.j << "_" << tt.k << ".svg";
                    std::ofstream out(fs::path(svg_dir) / name.str());
                    if (!out)
                        throw UsageError("cannot write into '" + svg_dir + "'");
                    out << triple_svg(tt, t, s);
                }
            }
            return 0;
        }

        VerifyReport r = run_verification(g, bundles, grid_tol);
        if (format == "json")
            emit(to_json(r, s).dump(2) + "\n", output);
        else
            emit(to_text(r), output);
        return r.ok ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const Unsupported& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}
