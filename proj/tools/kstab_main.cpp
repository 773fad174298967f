// kstab — decide uniform K-stability / K-stability / K-polystability /
// K-semistability of log Fano hyperplane arrangements by exact rational
// computation.
//
// Exit codes: 0 = a verdict was computed (including "not log Fano" and
// "not class P"), 1 = input error (unreadable or malformed file, bad
// parameters), 2 = precondition error on a sub-command (e.g. an empty
// intersection passed to `beta --flat`, or an empty arrangement passed to
// `lct`/`decompose`).

#include "kstab/kstab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace kstab;
using nlohmann::json;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{1, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliError{1, "cannot write " + out_path};
    out << text;
}

std::vector<Rat> parse_weight_list(const std::string& csv) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
    return out;
}

std::vector<int> parse_index_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = std::stoi(item, &pos);
        if (pos != item.size()) throw CliError{1, "bad index list \"" + csv + "\""};
        out.push_back(v);
    }
    return out;
}

Arrangement load_arrangement(const std::string& path) {
    try {
        return parse_arrangement(read_file(path));
    } catch (const ParseError& e) {
        throw CliError{1, e.what()};
    }
}

PointConfiguration load_config(const std::string& path) {
    try {
        return parse_config(read_file(path));
    } catch (const ParseError& e) {
        throw CliError{1, e.what()};
    }
}

json closure_json(const std::vector<int>& closure) {
    json arr = json::array();
    for (int i : closure) arr.push_back(i);
    return arr;
}

std::string closure_text(const std::vector<int>& closure) {
    std::string s = "[";
    for (std::size_t i = 0; i < closure.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(closure[i]);
    }
    return s + "]";
}

void cmd_classify(const std::string& file, bool as_json, const std::string& out) {
    Arrangement a = load_arrangement(file);
    Classification cls = classify(a);
    const bool has_scale = a.size() > 0;
    const Rat tau = has_scale ? Rat(a.dim + 1) / total_degree(a) : Rat(0);
    const Rat lct_cy = has_scale ? lct(scale_to_cy(a)) : Rat(0);
    std::optional<bool> class_p;
    if (cls.verdict == Verdict::PolystableNotKStable && has_scale) class_p = true;
    if (cls.verdict == Verdict::SemistableNotPolystable) class_p = false;

    if (as_json) {
        json doc;
        doc["schema"] = "1";
        doc["verdict"] = verdict_name(cls.verdict);
        doc["tau"] = has_scale ? json(rat_str(tau)) : json(nullptr);
        doc["lct_cy"] = has_scale ? json(rat_str(lct_cy)) : json(nullptr);
        doc["witness"] = cls.witness ? closure_json(cls.witness->closure) : json(nullptr);
        doc["class_p"] = class_p ? json(*class_p) : json(nullptr);
        doc["note"] = cls.note;
        emit(out, doc.dump(2) + "\n");
    } else {
        std::ostringstream ss;
        ss << "verdict: " << verdict_name(cls.verdict) << "\n";
        if (has_scale) ss << "tau: " << rat_str(tau) << "\n";
        if (has_scale) ss << "lct_cy: " << rat_str(lct_cy) << "\n";
        if (cls.witness) ss << "witness: " << closure_text(cls.witness->closure) << "\n";
        if (class_p) ss << "class_p: " << (*class_p ? "true" : "false") << "\n";
        if (!cls.note.empty()) ss << "note: " << cls.note << "\n";
        emit(out, ss.str());
    }
}

void cmd_lct(const std::string& file, bool as_json, const std::string& out) {
    Arrangement a = load_arrangement(file);
    Rat v;
    try {
        v = lct(a);
    } catch (const std::invalid_argument& e) {
        throw CliError{2, e.what()};
    }
    if (as_json) {
        json doc;
        doc["schema"] = "1";
        doc["lct"] = rat_str(v);
        emit(out, doc.dump(2) + "\n");
    } else {
        emit(out, rat_str(v) + "\n");
    }
}

void cmd_flats(const std::string& file, bool as_json, const std::string& out) {
    Arrangement a = load_arrangement(file);
    Lattice l = all_flats(a);
    if (as_json) {
        json doc;
        doc["schema"] = "1";
        doc["count"] = l.flats.size();
        doc["flats"] = json::array();
        for (const Flat& f : l.flats) {
            json fj;
            fj["closure"] = closure_json(f.closure);
            fj["codim"] = f.codim;
            fj["weight"] = rat_str(flat_weight(a, f));
            doc["flats"].push_back(std::move(fj));
        }
        emit(out, doc.dump(2) + "\n");
    } else {
        std::ostringstream ss;
        ss << "flats: " << l.flats.size() << "\n";
        for (const Flat& f : l.flats)
            ss << "closure=" << closure_text(f.closure) << " codim=" << f.codim
               << " weight=" << rat_str(flat_weight(a, f)) << "\n";
        emit(out, ss.str());
    }
}

void cmd_beta(const std::string& file, const std::string& flat_csv, bool as_json,
              const std::string& out) {
    Arrangement a = load_arrangement(file);
    std::vector<int> indices = parse_index_list(flat_csv);
    std::optional<Flat> f;
    try {
        f = closure_of(a, indices);
    } catch (const std::exception& e) {
        throw CliError{2, e.what()};
    }
    if (!f) throw CliError{2, "the listed hyperplanes have empty intersection"};
    BetaValue b;
    try {
        b = beta_hat_blowup(a, *f);
    } catch (const std::invalid_argument& e) {
        throw CliError{2, e.what()};
    }
    if (as_json) {
        json doc;
        doc["schema"] = "1";
        doc["beta_hat"] = rat_str(b.value);
        doc["codim"] = b.codim;
        doc["flat_weight"] = rat_str(b.flat_weight);
        doc["total_degree"] = rat_str(b.total);
        doc["flat"] = closure_json(f->closure);
        emit(out, doc.dump(2) + "\n");
    } else {
        std::ostringstream ss;
        ss << "beta_hat: " << rat_str(b.value) << "\n"
           << "codim: " << b.codim << "\n"
           << "flat_weight: " << rat_str(b.flat_weight) << "\n"
           << "total_degree: " << rat_str(b.total) << "\n"
           << "flat: " << closure_text(f->closure) << "\n";
        emit(out, ss.str());
    }
}

void cmd_decompose(const std::string& file, bool as_json, const std::string& out) {
    Arrangement a = load_arrangement(file);
    Arrangement g;
    try {
        g = scale_to_cy(a);
    } catch (const std::invalid_argument& e) {
        throw CliError{2, e.what()};
    }

    // locate the obstruction, if any, before decomposing
    Lattice l = all_flats(g);
    const Flat* bad_lc = nullptr;
    const Flat* bad_q = nullptr;
    for (const Flat& f : l.flats)
        if (flat_weight(g, f) > f.codim) { bad_lc = &f; break; }
    if (!bad_lc)
        for (const Flat& f : l.flats) {
            if (flat_weight(g, f) != f.codim) continue;
            if (!q_condition_holds(g, f)) { bad_q = &f; break; }
        }

    if (bad_lc || bad_q) {
        const Flat* f = bad_lc ? bad_lc : bad_q;
        const char* kind = bad_lc ? "not_lc" : "q_condition";
        if (as_json) {
            json doc;
            doc["schema"] = "1";
            doc["class_p"] = false;
            doc["obstruction"] = kind;
            doc["flat"] = closure_json(f->closure);
            doc["codim"] = f->codim;
            doc["weight"] = rat_str(flat_weight(g, *f));
            emit(out, doc.dump(2) + "\n");
        } else {
            std::ostringstream ss;
            ss << "class_p: false\n"
               << "obstruction: " << kind << "\n"
               << "flat: " << closure_text(f->closure) << " codim=" << f->codim
               << " weight=" << rat_str(flat_weight(g, *f)) << "\n";
            emit(out, ss.str());
        }
        return;
    }

    Decomposition d = decompose(g);
    if (as_json) {
        json doc;
        doc["schema"] = "1";
        doc["class_p"] = true;
        doc["factors"] = decomposition_to_json(d);
        emit(out, doc.dump(2) + "\n");
    } else {
        std::ostringstream ss;
        ss << "class_p: true\n"
           << "factors: " << d.factors.size() << "\n";
        for (std::size_t i = 0; i < d.factors.size(); ++i) {
            const Factor& f = d.factors[i];
            ss << "factor " << i << ": ambient_dim=" << f.ambient_dim
               << " hyperplanes=" << f.arrangement.size();
            if (f.arrangement.size() > 0) {
                ss << " weights=[";
                for (int k = 0; k < f.arrangement.size(); ++k) {
                    if (k) ss << ", ";
                    ss << rat_str(f.arrangement.weights[k]);
                }
                ss << "]";
            }
            ss << "\n";
        }
        emit(out, ss.str());
    }
}

void cmd_git(const std::string& file, bool as_json, const std::string& out) {
    PointConfiguration pc = load_config(file);
    Classification cls = git_classify(pc);
    std::optional<HmResult> hm;
    if (pc.size() > 0) hm = hm_check(pc);

    if (as_json) {
        json doc;
        doc["schema"] = "1";
        if (hm) {
            json hj;
            hj["semistable"] = hm->semistable;
            hj["stable"] = hm->stable;
            if (hm->witness) {
                json wj;
                wj["dim"] = hm->witness->dim;
                wj["points"] = closure_json(hm->witness->points);
                hj["witness"] = std::move(wj);
            } else {
                hj["witness"] = nullptr;
            }
            doc["hm"] = std::move(hj);
        } else {
            doc["hm"] = nullptr;
        }
        doc["verdict"] = verdict_name(cls.verdict);
        doc["dual_witness"] = cls.witness ? closure_json(cls.witness->closure) : json(nullptr);
        doc["note"] = cls.note;
        emit(out, doc.dump(2) + "\n");
    } else {
        std::ostringstream ss;
        if (hm) {
            ss << "semistable: " << (hm->semistable ? "true" : "false") << "\n"
               << "stable: " << (hm->stable ? "true" : "false") << "\n";
            if (hm->witness)
                ss << "span_witness: dim=" << hm->witness->dim
                   << " points=" << closure_text(hm->witness->points) << "\n";
        }
        ss << "verdict: " << verdict_name(cls.verdict) << "\n";
        if (cls.witness) ss << "dual_witness: " << closure_text(cls.witness->closure) << "\n";
        if (!cls.note.empty()) ss << "note: " << cls.note << "\n";
        emit(out, ss.str());
    }
}

std::vector<Rat> resolve_weights(const std::string& single, const std::string& list, int count) {
    if (!single.empty() && !list.empty()) throw CliError{1, "give either --weight or --weights"};
    if (!single.empty()) return std::vector<Rat>(count, parse_rat(single));
    if (!list.empty()) return parse_weight_list(list);
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact K-stability of log Fano hyperplane arrangements"};
    app.require_subcommand(1);

    std::string file, out, flat_csv, weight, weights_csv, factors_file, t_str;
    bool as_json = false;
    int dim = 2, count = 3, extras = 0;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd, bool with_file = true) {
        if (with_file) cmd->add_option("file", file, "input document")->required();
        cmd->add_flag("--json", as_json, "machine-readable output");
        cmd->add_option("--out", out, "write the report to a file instead of stdout");
    };

    CLI::App* c_classify = app.add_subcommand("classify", "classify a weighted arrangement");
    add_common(c_classify);
    CLI::App* c_lct = app.add_subcommand("lct", "log canonical threshold of an arrangement");
    add_common(c_lct);
    CLI::App* c_flats = app.add_subcommand("flats", "list the intersection lattice");
    add_common(c_flats);
    CLI::App* c_beta = app.add_subcommand("beta", "beta-hat of the blowup along a flat");
    add_common(c_beta);
    c_beta->add_option("--flat", flat_csv, "comma-separated hyperplane indices cutting the flat")
        ->required();
    CLI::App* c_dec = app.add_subcommand(
        "decompose", "factor the Calabi-Yau rescaling into klt Calabi-Yau pieces");
    add_common(c_dec);
    CLI::App* c_git = app.add_subcommand(
        "git",
        "GIT stability of a weighted point configuration in the dual space. The subset-weight "
        "check applies to any configuration of positive total weight; the classification "
        "additionally needs the dual arrangement to be log Fano and reports not_log_fano "
        "otherwise.");
    add_common(c_git);

    CLI::App* c_gen = app.add_subcommand("gen", "generate arrangements");
    c_gen->require_subcommand(1);
    CLI::App* g_snc = c_gen->add_subcommand("snc", "random simple normal crossing arrangement");
    g_snc->add_option("--dim", dim, "ambient dimension")->required();
    g_snc->add_option("--count", count, "number of hyperplanes")->required();
    g_snc->add_option("--weight", weight, "weight for every hyperplane");
    g_snc->add_option("--weights", weights_csv, "comma-separated weights");
    g_snc->add_option("--seed", seed, "random seed");
    g_snc->add_option("--out", out, "output file");
    CLI::App* g_pencil = c_gen->add_subcommand("pencil", "hyperplanes through a codim-2 flat");
    g_pencil->add_option("--dim", dim, "ambient dimension")->required();
    g_pencil->add_option("--count", count, "pencil members")->required();
    g_pencil->add_option("--extras", extras, "generic extra hyperplanes");
    g_pencil->add_option("--weight", weight, "weight for every hyperplane");
    g_pencil->add_option("--weights", weights_csv, "comma-separated weights");
    g_pencil->add_option("--seed", seed, "random seed");
    g_pencil->add_option("--out", out, "output file");
    CLI::App* g_sjoin = c_gen->add_subcommand("sjoin", "join of klt Calabi-Yau factors");
    g_sjoin
        ->add_option("--factors", factors_file,
                     "JSON file {\"factors\": [<arrangement document>, ...]}")
        ->required();
    g_sjoin->add_option("--out", out, "output file");
    CLI::App* g_alpha = c_gen->add_subcommand(
        "alpha", "cone example: m*n hyperplanes through a point plus m general ones");
    g_alpha->add_option("--dim", dim, "ambient dimension (>= 1)")->required();
    g_alpha->add_option("--count", count, "m (>= dim+1)")->required();
    g_alpha->add_option("--t", t_str, "scale t in [m(n-1)/((m-1)n), 1)")->required();
    g_alpha->add_option("--seed", seed, "random seed");
    g_alpha->add_option("--out", out, "output file");
    CLI::App* g_dim1 = c_gen->add_subcommand("dim1", "weighted points on the projective line");
    g_dim1->add_option("--count", count, "number of points")->required();
    g_dim1->add_option("--weights", weights_csv, "comma-separated weights (else seeded log Fano)");
    g_dim1->add_option("--seed", seed, "random seed");
    g_dim1->add_option("--out", out, "output file");

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int rc = app.exit(e);
            return rc == 0 ? 0 : 1;
        }

        if (c_classify->parsed()) cmd_classify(file, as_json, out);
        else if (c_lct->parsed()) cmd_lct(file, as_json, out);
        else if (c_flats->parsed()) cmd_flats(file, as_json, out);
        else if (c_beta->parsed()) cmd_beta(file, flat_csv, as_json, out);
        else if (c_dec->parsed()) cmd_decompose(file, as_json, out);
        else if (c_git->parsed()) cmd_git(file, as_json, out);
        else if (c_gen->parsed()) {
            Arrangement a;
            try {
                if (g_snc->parsed())
                    a = gen_snc(dim, count, resolve_weights(weight, weights_csv, count), seed);
                else if (g_pencil->parsed())
                    a = gen_pencil(dim, count, extras,
                                   resolve_weights(weight, weights_csv, count + extras), seed);
                else if (g_sjoin->parsed()) {
                    json doc;
                    try {
                        doc = json::parse(read_file(factors_file));
                    } catch (const json::parse_error& e) {
                        throw CliError{1, std::string("JSON parse error: ") + e.what()};
                    }
                    if (!doc.is_object() || !doc.contains("factors") || !doc["factors"].is_array())
                        throw CliError{1, "factor file must be {\"factors\": [...]}"};
                    std::vector<Arrangement> factors;
                    for (const auto& fj : doc["factors"]) factors.push_back(arrangement_from_json(fj));
                    a = s_join(factors);
                } else if (g_alpha->parsed())
                    a = gen_alpha_example(dim, count, parse_rat(t_str), seed);
                else if (g_dim1->parsed())
                    a = gen_dim1(count, resolve_weights("", weights_csv, count), seed);
            } catch (const ParseError& e) {
                throw CliError{1, e.what()};
            } catch (const std::invalid_argument& e) {
                throw CliError{1, e.what()};
            } catch (const std::runtime_error& e) {
                throw CliError{2, e.what()};  // resampling exhausted
            }
            emit(out, serialize_arrangement(a));
        }
        return 0;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
