#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coresurf/core_analysis.hpp"
#include "coresurf/cover_oracle.hpp"
#include "coresurf/serialize.hpp"
#include "coresurf/word.hpp"
#include "coresurf/word_calculus.hpp"

namespace {

using namespace coresurf;

std::vector<Word> parse_gens(const std::string& csv, const Presentation& p) {
  std::vector<Word> out;
  std::string piece;
  std::stringstream ss(csv);
  while (std::getline(ss, piece, ',')) out.push_back(parse_word(piece, p));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path, 0);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + out_path, 0);
  f << text;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string summary_line(const TiledSurface& Y) {
  const Stats s = stats(Y);
  std::string out = "v=" + std::to_string(s.vertices) + " e=" + std::to_string(s.edges) +
                    " f=" + std::to_string(s.faces) + " chi=" + std::to_string(s.chi) +
                    " boundary=[";
  for (std::size_t i = 0; i < s.boundary_lengths.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.boundary_lengths[i]);
  }
  return out + "]";
}

std::string render(const TiledSurface& Y, const std::string& format) {
  if (format == "json") return to_json(Y);
  if (format == "dot") return to_dot(Y);
  throw ParseError("unknown format " + format, 0);
}

SubComplex read_subcomplex(const std::string& path) {
  SubComplex sub;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
    auto ids = [&](const char* key) {
      std::vector<int> out;
      if (doc.contains(key)) out = doc.at(key).get<std::vector<int>>();
      return out;
    };
    sub.vertices = ids("vertices");
    sub.edges = ids("edges");
    sub.faces = ids("faces");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad subcomplex file: ") + e.what(), 0);
  }
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"core surfaces of finitely generated subgroups of surface groups"};
  app.require_subcommand(1);

  int genus = 2;
  std::string gens_csv;
  std::string word_a, word_b;
  std::string in_path, out_path, sub_path;
  std::string format = "json";
  std::string mode = "br";
  long budget_geodesic = kDefaultWordBudget;
  long budget_sbr = kDefaultSbrBudget;
  int radius = 2;
  unsigned seed = 0;
  bool randomize = false;
  bool raw = false;

  auto add_genus = [&](CLI::App* cmd) {
    cmd->add_option("--genus", genus, "ambient surface genus (>= 2)");
  };

  CLI::App* reduce = app.add_subcommand("reduce", "rewrite a word to geodesic form");
  add_genus(reduce);
  reduce->add_option("word", word_a)->required();

  CLI::App* trivial = app.add_subcommand("trivial", "does the word represent the identity");
  add_genus(trivial);
  trivial->add_option("word", word_a)->required();

  CLI::App* equal = app.add_subcommand("equal", "do two words represent the same element");
  add_genus(equal);
  equal->add_option("u", word_a)->required();
  equal->add_option("v", word_b)->required();

  CLI::App* conjugate = app.add_subcommand("conjugate", "are two words conjugate");
  add_genus(conjugate);
  conjugate->add_option("u", word_a)->required();
  conjugate->add_option("v", word_b)->required();
  conjugate->add_option("--budget-geodesic", budget_geodesic, "representative enumeration cap");

  CLI::App* core = app.add_subcommand("core", "core surface of the subgroup the words generate");
  add_genus(core);
  core->add_option("--gens", gens_csv, "comma-separated generator words")->required();
  core->add_option("--out", out_path, "write the complex here instead of stdout");
  core->add_option("--format", format, "json or dot");
  core->add_option("--seed", seed, "shuffle fold order with this seed")
      ->each([&](const std::string&) { randomize = true; });

  CLI::App* check = app.add_subcommand("check-core", "is the complex a core surface");
  check->add_option("--in", in_path, "JSON complex")->required();

  CLI::App* member = app.add_subcommand("member", "is the word in the subgroup");
  add_genus(member);
  member->add_option("--gens", gens_csv, "comma-separated generator words")->required();
  member->add_option("word", word_a)->required();

  CLI::App* conj_into = app.add_subcommand("conj-into", "is a conjugate of the word in the subgroup");
  add_genus(conj_into);
  conj_into->add_option("--gens", gens_csv, "comma-separated generator words")->required();
  conj_into->add_option("word", word_a)->required();
  conj_into->add_option("--budget-geodesic", budget_geodesic, "representative enumeration cap");

  CLI::App* stats_cmd = app.add_subcommand("stats", "cell counts, Euler characteristic, boundary");
  stats_cmd->add_option("--in", in_path, "JSON complex")->required();

  CLI::App* export_dot = app.add_subcommand("export-dot", "Graphviz rendering of a complex");
  export_dot->add_option("--in", in_path, "JSON complex")->required();
  export_dot->add_option("--out", out_path, "write here instead of stdout");

  CLI::App* cover = app.add_subcommand("cover-ball", "neighborhood of the basepoint in the cover");
  add_genus(cover);
  cover->add_option("--gens", gens_csv, "subgroup generators; empty for the universal cover");
  cover->add_option("--in", in_path, "seed complex instead of --gens (basepoint 0)");
  cover->add_option("--radius", radius, "saturation radius")->required();
  cover->add_flag("--raw", raw, "keep the rim as built; reduction gets expensive past radius 4");
  cover->add_option("--out", out_path, "write the ball complex here");
  cover->add_option("--format", format, "json or dot");

  CLI::App* closure = app.add_subcommand("closure", "grow a subcomplex until its boundary is reduced");
  closure->add_option("--in", in_path, "JSON ambient complex")->required();
  closure->add_option("--sub", sub_path, "JSON id lists {vertices,edges,faces}")->required();
  closure->add_option("--mode", mode, "br or sbr");
  closure->add_option("--budget-sbr", budget_sbr, "annexation step cap in sbr mode");

  try {
    app.parse(argc, argv);

    if (*reduce) {
      const Presentation p(genus);
      std::cout << format_word(dehn_reduce(parse_word(word_a, p), p), p) << "\n";
    } else if (*trivial) {
      const Presentation p(genus);
      std::cout << bool_text(is_trivial(parse_word(word_a, p), p)) << "\n";
    } else if (*equal) {
      const Presentation p(genus);
      const Word u = parse_word(word_a, p);
      const Word v = parse_word(word_b, p);
      std::cout << bool_text(is_trivial(concat(u, inverse(v)), p)) << "\n";
    } else if (*conjugate) {
      const Presentation p(genus);
      std::cout << bool_text(are_conjugate(parse_word(word_a, p), parse_word(word_b, p), p,
                                           budget_geodesic))
                << "\n";
    } else if (*core) {
      const Presentation p(genus);
      const PointedCoreSurface c =
          core_surface_from_generators(parse_gens(gens_csv, p), p, {randomize, seed});
      write_output(render(c.surface, format), out_path);
      std::cout << summary_line(c.surface) << "\n";
    } else if (*check) {
      const CoreCheck res = check_core_surface(from_json(read_file(in_path)));
      std::cout << bool_text(res.ok()) << "\n";
      for (const std::string& r : res.reasons) std::cout << r << "\n";
    } else if (*member) {
      const Presentation p(genus);
      const PointedCoreSurface c = core_surface_from_generators(parse_gens(gens_csv, p), p);
      std::cout << bool_text(is_member(c, parse_word(word_a, p))) << "\n";
    } else if (*conj_into) {
      const Presentation p(genus);
      const PointedCoreSurface c = core_surface_from_generators(parse_gens(gens_csv, p), p);
      std::cout << bool_text(is_conjugate_into(c, parse_word(word_a, p), budget_geodesic))
                << "\n";
    } else if (*stats_cmd) {
      const TiledSurface Y = from_json(read_file(in_path));
      const Stats s = stats(Y);
      std::cout << summary_line(Y) << "\n";
      for (std::size_t i = 0; i < s.components.size(); ++i) {
        const ComponentStats& c = s.components[i];
        std::cout << "component " << i << ": v=" << c.vertices << " e=" << c.edges
                  << " f=" << c.faces << " chi=" << c.chi
                  << " boundary_cycles=" << c.boundary_cycles << " genus=" << c.genus << "\n";
      }
    } else if (*export_dot) {
      write_output(to_dot(from_json(read_file(in_path))), out_path);
    } else if (*cover) {
      const Presentation p(genus);
      TiledSurface seed_complex(p);
      int basepoint = 0;
      if (!in_path.empty()) {
        seed_complex = from_json(read_file(in_path));
      } else if (!gens_csv.empty()) {
        const PointedCoreSurface c = core_surface_from_generators(parse_gens(gens_csv, p), p);
        seed_complex = c.surface;
        basepoint = c.basepoint;
      } else {
        seed_complex = single_vertex_surface(p);
      }
      const CoverBall ball(seed_complex, basepoint, radius, !raw);
      const TiledSurface S = ball.to_surface();
      if (!out_path.empty()) write_output(render(S, format), out_path);
      std::cout << summary_line(S) << "\n";
    } else if (*closure) {
      if (mode != "br" && mode != "sbr") throw ParseError("unknown mode " + mode, 0);
      const TiledSurface Z = from_json(read_file(in_path));
      const ClosureResult res = closure_within(
          Z, read_subcomplex(sub_path),
          mode == "sbr" ? ClosureMode::strong : ClosureMode::boundary_reduce, budget_sbr);
      std::cout << "completed=" << bool_text(res.completed) << " steps=" << res.steps
                << " boundary=[";
      for (std::size_t i = 0; i < res.boundary_totals.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << res.boundary_totals[i];
      }
      std::cout << "]\n";
      std::cout << "v=" << res.sub.vertices.size() << " e=" << res.sub.edges.size()
                << " f=" << res.sub.faces.size() << "\n";
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
