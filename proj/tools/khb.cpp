// Command line front end: Khovanov and Lee homology of braid closures, the
// annular d_t invariant, shape catalogs, and the 3-braid classifier.
//
// JSON goes to stdout with sorted keys and exact rationals; diagnostics to
// stderr.  Exit codes: 0 ok, 2 parse error, 3 resource cap, 4 classifier
// undetermined without a mirror normal form.
//
// Results are cached under $KHB_CACHE when set, keyed by a SHA-256 of the
// canonical input + operation + parameters.  Cache hits reproduce the fresh
// output byte for byte.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "khb/error.hpp"
#include "khb/invariants.hpp"
#include "khb/jsonio.hpp"
#include "khb/murasugi3.hpp"
#include "khb/scanner.hpp"
#include "khb/shapes.hpp"
#include "sha256.hpp"

using nlohmann::json;

namespace {

constexpr const char* kEngineVersion = "khb 0.1.0";

std::string canonical_dump(const json& j) { return j.dump(); }

// Prints the output payload, writing through the cache when enabled.
// `recompute` runs only on a cache miss.
int emit(const std::string& input, const std::string& operation, const json& parameters,
         const std::function<json()>& recompute) {
    const char* dir = std::getenv("KHB_CACHE");
    std::string key, path;
    if (dir && *dir) {
        key = input + "\n" + operation + "\n" + canonical_dump(parameters);
        path = std::string(dir) + "/" + khb::sha256_hex(key) + ".json";
        std::ifstream in(path);
        if (in) {
            json record = json::parse(in, nullptr, false);
            if (!record.is_discarded() && record.contains("output") &&
                record.value("key", "") == key) {
                std::cout << canonical_dump(record["output"]) << "\n";
                return 0;
            }
        }
    }
    auto start = std::chrono::steady_clock::now();
    json output = recompute();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (!path.empty()) {
        json record{{"engine_version", kEngineVersion},
                    {"input", input},
                    {"key", key},
                    {"operation", operation},
                    {"output", output},
                    {"parameters", parameters},
                    {"timing_ms", ms}};
        std::string tmp = path + ".tmp";
        std::ofstream out(tmp);
        out << canonical_dump(record) << "\n";
        out.close();
        if (out) std::rename(tmp.c_str(), path.c_str());
    }
    std::cout << canonical_dump(output) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"annular Khovanov-Lee invariants of braid closures"};
    app.require_subcommand(1);

    std::string word_text, nf_text, mirror_text;
    std::string backend = "cube", field = "q", detail = "ij";
    int cube_limit = 16, strands = 0, genus = 0, shape_cap = 8, upsilon_cap = 6;
    size_t object_cap = 200000;
    bool fallback = false;

    auto* kh = app.add_subcommand("kh", "Khovanov homology dimensions of a braid closure");
    kh->add_option("word", word_text, "braid word, e.g. \"3: 1 -2\"")->required();
    kh->add_option("--backend", backend, "cube or scan")
        ->check(CLI::IsMember({"cube", "scan"}));
    kh->add_option("--field", field, "q or f2")->check(CLI::IsMember({"q", "f2"}));
    kh->add_option("--detail", detail, "ij or ijk")->check(CLI::IsMember({"ij", "ijk"}));
    kh->add_option("--cube-limit", cube_limit, "crossing cap for the cube backend");
    kh->add_option("--object-cap", object_cap, "object cap for the scanner");

    auto* inv = app.add_subcommand("invariants", "writhe, components, s, d_t and psi");
    inv->add_option("word", word_text)->required();
    inv->add_option("--cube-limit", cube_limit);

    auto* shp = app.add_subcommand("shapes", "admissible d_t or Upsilon shape catalog");
    auto* so = shp->add_option("--strands", strands, "d_t shapes for this braid index");
    auto* go = shp->add_option("--upsilon-genus", genus, "Upsilon shapes for this genus");
    shp->add_option("--shape-cap", shape_cap);
    shp->add_option("--upsilon-cap", upsilon_cap);
    so->excludes(go);

    auto* cls = app.add_subcommand("classify3", "closed-form 3-braid classification");
    cls->add_option("nf", nf_text, "normal form, e.g. \"F2 d=1 m=-4\"")->required();
    cls->add_option("--mirror-nf", mirror_text, "normal form of the mirror braid");
    cls->add_flag("--fallback", fallback, "compute s homologically when undetermined");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (kh->parsed()) {
            khb::BraidWord w = khb::parse_braid_word(word_text);
            if (backend == "scan" && (detail != "ij" || field != "q"))
                throw khb::ParseError("the scanner backend serves --detail ij --field q only");
            json params{{"backend", backend}, {"field", field}, {"detail", detail}};
            return emit(khb::format_braid_word(w), "kh", params, [&] {
                if (backend == "scan")
                    return khb::dims_to_json(khb::scan_kh_dims(w, object_cap));
                auto c = khb::build_cube(w, cube_limit);
                auto det = detail == "ij" ? khb::Detail::IJ : khb::Detail::IJK;
                auto fld = field == "q" ? khb::Field::Q : khb::Field::F2;
                return khb::dims_to_json(khb::homology_dims(c, khb::Diff::Del, fld, det));
            });
        }
        if (inv->parsed()) {
            khb::BraidWord w = khb::parse_braid_word(word_text);
            return emit(khb::format_braid_word(w), "invariants", json::object(), [&] {
                return json{{"writhe", khb::writhe(w)},
                            {"components", khb::closure_component_count(w)},
                            {"self_linking", khb::self_linking(w)},
                            {"s", khb::s_invariant(w, cube_limit)},
                            {"dt", khb::plf_to_json(khb::dt_function(w, cube_limit))},
                            {"psi", khb::psi_nonvanishing(w, khb::Field::Q, cube_limit)}};
            });
        }
        if (shp->parsed()) {
            if ((strands == 0) == (genus == 0))
                throw khb::ParseError("pass exactly one of --strands or --upsilon-genus");
            json params{{"strands", strands}, {"upsilon_genus", genus}};
            std::string input = strands ? "strands " + std::to_string(strands)
                                        : "genus " + std::to_string(genus);
            return emit(input, "shapes", params, [&] {
                khb::ShapeSet shapes = strands
                                           ? khb::enumerate_dt_shapes(strands, shape_cap)
                                           : khb::enumerate_upsilon_shapes(genus, upsilon_cap);
                json arr = json::array();
                for (const auto& f : shapes) arr.push_back(khb::plf_to_json(f));
                return json{{"count", shapes.size()}, {"shapes", arr}};
            });
        }
        if (cls->parsed()) {
            khb::MurasugiNF nf = khb::parse_nf(nf_text);
            std::optional<khb::MurasugiNF> mirror;
            if (!mirror_text.empty()) mirror = khb::parse_nf(mirror_text);
            json params{{"fallback", fallback},
                        {"mirror", mirror ? khb::format_nf(*mirror) : ""}};
            return emit(khb::format_nf(nf), "classify3", params, [&] {
                auto c = khb::classify3(nf, mirror,
                                        fallback ? khb::Fallback::Compute : khb::Fallback::None);
                return khb::classification_to_json(c);
            });
        }
    } catch (const khb::UndeterminedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const khb::LimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const khb::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
