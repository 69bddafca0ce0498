// tilequot: command-line front end.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "tilequot/catalog.hpp"
#include "tilequot/census.hpp"
#include "tilequot/render.hpp"

using namespace tilequot;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Sublattice parse_matrix(const std::string& s) {
  try {
    return Sublattice::parse(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--matrix: ") + e.what());
  }
}

Vec2 pick_center(const PeriodicTiling& t, std::optional<int> k) {
  auto centers = half_turn_centers(t);
  if (centers.empty()) throw TilingError("G undefined: no half-turn symmetry");
  if (k) {
    if (*k < 0 || *k >= static_cast<int>(centers.size()))
      throw UsageError("--center must be in 0.." + std::to_string(centers.size() - 1));
    return centers[*k];
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < centers.size(); ++i)
    if (orbit_count(t, GroupTag::G, centers[i]).size() < orbit_count(t, GroupTag::G, centers[best]).size()) best = i;
  return centers[best];
}

void print_blocks(const PeriodicTiling& t, const OrbitPartition& p) {
  for (const auto& b : p.blocks) {
    std::cout << "  {";
    for (std::size_t i = 0; i < b.size(); ++i) std::cout << (i ? " " : "") << t.vertices[b[i]].id;
    std::cout << "}  " << vertex_figure_name(vertex_figure(t, b.front())) << '\n';
  }
}

int cmd_validate(const std::string& file) {
  auto t = load_tiling(file);
  std::cout << "valid: " << t.name << " (" << t.vertex_count() << " vertices, " << t.edges.size() << " edges, "
            << t.faces.size() << " faces per cell)\n";
  return 0;
}

int cmd_info(const std::string& file) {
  auto t = load_tiling(file);
  std::cout << "name: " << t.name << "\n"
            << "alpha: " << t.alpha << "\nbeta: " << t.beta << "\n"
            << "motif: " << t.vertex_count() << " vertices, " << t.edges.size() << " edges, " << t.faces.size() << " faces\n";
  auto full = full_symmetries(t);
  std::cout << "point group order: " << full.size() << '\n';
  int k = homogeneity_check(t);
  std::cout << "vertex orbits (k): " << k << '\n';
  print_blocks(t, orbit_count(t, GroupTag::Full));
  auto centers = half_turn_centers(t);
  std::cout << "half-turn centers: " << centers.size() << '\n';
  for (std::size_t i = 0; i < centers.size(); ++i)
    std::cout << "  [" << i << "] " << centers[i] << "  G-orbits " << orbit_count(t, GroupTag::G, centers[i]).size() << '\n';
  if (!centers.empty()) std::cout << "bound: " << theorem_bound(t) << '\n';
  return 0;
}

int cmd_orbits(const std::string& file, const std::string& group, std::optional<int> center) {
  auto t = load_tiling(file);
  std::string g;
  for (char c : group) g += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  OrbitPartition p;
  if (g == "h")
    p = orbit_count(t, GroupTag::H);
  else if (g == "g")
    p = orbit_count(t, GroupTag::G, pick_center(t, center));
  else if (g == "full")
    p = orbit_count(t, GroupTag::Full);
  else
    throw UsageError("--group must be H, G or full");
  std::cout << "orbits: " << p.size() << '\n';
  print_blocks(t, p);
  return 0;
}

int cmd_quotient(const std::string& file, const std::string& matrix, bool lax) {
  auto t = load_tiling(file);
  auto s = parse_matrix(matrix);
  auto x = make_quotient(t, s, !lax);
  std::cout << "sublattice: " << to_string(s.m) << " (index " << s.index << ")\n"
            << "V=" << x.num_vertices() << " E=" << x.num_edges() << " F=" << x.num_faces()
            << " chi=" << x.euler_characteristic() << '\n'
            << "polyhedral: " << (x.polyhedral ? "yes" : "no (" + x.defect + ")") << '\n';
  return 0;
}

int cmd_aut(const std::string& file, const std::string& matrix, bool lax, const std::string& flags_out) {
  auto t = load_tiling(file);
  auto s = parse_matrix(matrix);
  auto x = make_quotient(t, s, !lax);
  auto fs = build_flags(x);
  auto aut = automorphism_group(fs);
  auto oc = orbit_counts(fs, aut);
  auto nr = normalizer(t, s);
  std::cout << "sublattice: " << to_string(s.m) << " (index " << s.index << ")"
            << (x.polyhedral ? "" : " [not polyhedral]") << '\n'
            << "flags: " << fs.size() << "\n|Aut|: " << aut.size() << '\n'
            << "orbits: vertices " << oc.vertices << ", edges " << oc.edges << ", faces " << oc.faces << '\n'
            << "normalizer: order " << nr.order << ", vertex orbits " << nr.vertex_orbits << ", point group kept";
  for (const auto& u : nr.preserving) std::cout << ' ' << to_string(u);
  std::cout << '\n';
  if (!flags_out.empty()) {
    std::ofstream out(flags_out);
    if (!out) throw std::runtime_error("cannot write " + flags_out);
    write_flags(out, fs);
  }
  bool agree = static_cast<std::int64_t>(aut.size()) == nr.order && oc.vertices == nr.vertex_orbits;
  if (!agree) std::cout << "oracles disagree\n";
  return agree ? 0 : 1;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_census(const std::string& file, const CensusOptions& opt, const std::string& csv, const std::string& json_out) {
  auto t = load_tiling(file);
  auto res = run_census(t, opt);
  std::cout << std::left << std::setw(20) << "sublattice" << std::setw(7) << "index" << std::setw(7) << "poly"
            << std::setw(5) << "m" << std::setw(7) << "m_nor" << std::setw(7) << "bound" << "|Aut|\n";
  auto o = [](const auto& v) { return v ? std::to_string(*v) : std::string("-"); };
  for (const auto& r : res.rows)
    std::cout << std::setw(20) << to_string(r.hnf) << std::setw(7) << r.index << std::setw(7)
              << (r.polyhedral ? "yes" : "no") << std::setw(5) << o(r.m) << std::setw(7) << o(r.m_nor) << std::setw(7)
              << o(r.bound) << o(r.aut_order) << (r.violation() ? "  VIOLATION" : "")
              << (r.disagreement() ? "  DISAGREE" : "") << '\n';
  std::cout << "rows: " << res.rows.size() << ", violations: " << res.violations
            << ", disagreements: " << res.disagreements << '\n';
  if (!csv.empty()) write_file(csv, census_csv(res));
  if (!json_out.empty()) write_file(json_out, census_json(res).dump(2) + "\n");
  return res.ok() ? 0 : 1;
}

int cmd_sharpness(const std::string& file, int max_index) {
  auto t = load_tiling(file);
  int bound = theorem_bound(t);
  auto r = sharpness_search(t, bound, max_index);
  std::cout << "bound: " << bound << '\n';
  if (!r.found) {
    std::cout << "not found up to index " << max_index << " (" << r.tried << " polyhedral quotients tried)\n";
    return 1;
  }
  std::cout << "sharp sublattice " << to_string(r.found->m) << " (index " << r.found->index << "), m = " << r.m
            << ", |Aut| = " << r.aut_order << '\n'
            << "Nor(Gamma) " << (r.nor_is_g ? "is translations and half turn only" : "is larger") << "; point group kept:";
  for (const auto& u : r.preserving) std::cout << ' ' << to_string(u);
  std::cout << '\n';
  return 0;
}

int cmd_verify(int i, const std::string& file, const VerifyOptions& opt) {
  CatalogEntry entry;
  try {
    entry = ingest_transcription(i, file);
  } catch (const CatalogError& e) {
    std::cout << "rejected at " << e.what() << '\n';
    return 1;
  }
  std::cout << "K" << i << ": " << entry.motif << " motif vertices, k = " << entry.k << ", bound " << entry.bound
            << (entry.equality ? " (equality)" : "") << '\n';
  auto t = load_tiling(file);
  auto rep = verify_catalog_entry(i, t, opt);
  for (const auto& line : rep.lines) std::cout << line << '\n';
  std::cout << (rep.ok ? "verified" : "NOT verified") << '\n';
  return rep.ok ? 0 : 1;
}

int cmd_render(const std::string& file, const std::string& matrix, const std::string& svg, const std::string& color_by,
               const std::string& extent, std::optional<int> center) {
  auto t = load_tiling(file);
  RenderSpec spec;
  spec.tiling = &t;
  try {
    spec.color_by = parse_color_by(color_by);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!matrix.empty()) spec.quotient = parse_matrix(matrix);
  if (!extent.empty()) {
    std::vector<std::int64_t> v;
    std::stringstream ss(extent);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        v.push_back(std::stoll(item));
      } catch (const std::exception&) {
        throw UsageError("--extent: bad entry '" + item + "'");
      }
    }
    if (v.size() != 4) throw UsageError("--extent needs x0,x1,y0,y1");
    spec.x0 = v[0], spec.x1 = v[1], spec.y0 = v[2], spec.y1 = v[3];
  }
  if (spec.color_by == ColorBy::G) spec.center = pick_center(t, center);
  if (spec.color_by == ColorBy::Aut && !spec.quotient) throw UsageError("--color-by AUT needs --matrix");
  spec.output = svg;
  auto res = render_svg(spec);
  std::cout << "wrote " << svg << ": " << res.vertex_disks << " vertices, " << res.color_classes << " colours\n";
  return 0;
}

int cmd_bounds(const std::string& csv) {
  if (!csv.empty()) write_file(csv, bounds_csv());
  for (const auto& p : bound_parts()) {
    std::cout << (p.entry.equality ? "m = " : "m <= ") << std::setw(2) << p.entry.bound << "  K:";
    for (int i : p.indices) std::cout << ' ' << i;
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex orbits of toroidal quotients of periodic tilings"};
  app.require_subcommand(1);

  std::string file, matrix, group = "full", csv, json_out, svg, color_by = "FULL", extent, flags_out;
  std::optional<int> center;
  bool lax = false;
  int max_index = 20, cross_check = 10, sharp_max = 100, census_max = 20, index = 0;
  unsigned jobs = 0;

  auto* validate = app.add_subcommand("validate", "check a tiling file");
  validate->add_option("file", file)->required();

  auto* info = app.add_subcommand("info", "summary of a tiling");
  info->add_option("file", file)->required();

  auto* orbits = app.add_subcommand("orbits", "vertex orbits under H, G or the full group");
  orbits->add_option("file", file)->required();
  orbits->add_option("--group", group, "H, G or full")->required();
  orbits->add_option("--center", center, "half-turn center index (see info)");

  auto* quotient = app.add_subcommand("quotient", "build the quotient by a sublattice");
  quotient->add_option("file", file)->required();
  quotient->add_option("--matrix", matrix, "a,b,c,d: columns (a,c) and (b,d)")->required();
  quotient->add_flag("--lax", lax, "allow non-polyhedral quotients");

  auto* aut = app.add_subcommand("aut", "automorphism group of a quotient");
  aut->add_option("file", file)->required();
  aut->add_option("--matrix", matrix, "a,b,c,d: columns (a,c) and (b,d)")->required();
  aut->add_flag("--lax", lax, "allow non-polyhedral quotients");
  aut->add_option("--flags", flags_out, "write the flag system (id s0 s1 s2)");

  auto* census = app.add_subcommand("census", "all sublattices up to an index");
  census->add_option("file", file)->required();
  census->add_option("--max-index", max_index)->required()->check(CLI::PositiveNumber);
  census->add_option("--cross-check", cross_check, "run both oracles up to this index");
  census->add_option("--csv", csv);
  census->add_option("--json", json_out);
  census->add_flag("--lax", lax, "also compute non-polyhedral rows");
  census->add_option("--jobs", jobs, "worker threads (0: all cores)");

  auto* sharp = app.add_subcommand("sharpness", "smallest quotient attaining the bound");
  sharp->add_option("file", file)->required();
  sharp->add_option("--max-index", sharp_max)->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "check a catalog transcription against the table");
  verify->add_option("i", index)->required()->check(CLI::Range(1, 65));
  verify->add_option("file", file)->required();
  verify->add_option("--census-max", census_max)->check(CLI::PositiveNumber);
  verify->add_option("--sharp-max", sharp_max)->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render", "SVG picture with vertices coloured by orbit");
  render->add_option("file", file)->required();
  render->add_option("--matrix", matrix, "draw the quotient by this sublattice");
  render->add_option("--svg", svg)->required();
  render->add_option("--color-by", color_by, "H, G, FULL or AUT")->required();
  render->add_option("--extent", extent, "patch cells x0,x1,y0,y1 (default 0,2,0,2)");
  render->add_option("--center", center, "half-turn center index for G");

  auto* bounds = app.add_subcommand("bounds", "print the bound table");
  bounds->add_option("--csv", csv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*info) return cmd_info(file);
    if (*orbits) return cmd_orbits(file, group, center);
    if (*quotient) return cmd_quotient(file, matrix, lax);
    if (*aut) return cmd_aut(file, matrix, lax, flags_out);
    if (*census) {
      CensusOptions opt;
      opt.max_index = max_index;
      opt.cross_check = cross_check;
      opt.strict = !lax;
      opt.jobs = jobs;
      return cmd_census(file, opt, csv, json_out);
    }
    if (*sharp) return cmd_sharpness(file, sharp_max);
    if (*verify) {
      VerifyOptions opt;
      opt.census_max_index = census_max;
      opt.sharpness_max_index = sharp_max;
      return cmd_verify(index, file, opt);
    }
    if (*render) return cmd_render(file, matrix, svg, color_by, extent, center);
    if (*bounds) return cmd_bounds(csv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
