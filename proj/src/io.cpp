#include "minplus/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace minplus {

namespace {

ExtendedReal parse_entry(const std::string& tok) {
  if (tok == "inf" || tok == "+inf") return ExtendedReal::eps();
  if (tok == "-inf") return ExtendedReal::neg_infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw ParseError("bad entry '" + tok + "'");
    return ExtendedReal(v);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad entry '" + tok + "'");
  }
}

std::vector<std::vector<ExtendedReal>> parse_grid(std::istream& in,
                                                  std::size_t expect_rows) {
  std::vector<std::vector<ExtendedReal>> rows;
  std::string line;
  while (rows.size() != expect_rows && std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<ExtendedReal> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_entry(tok));
    if (row.empty()) continue;  // blank line
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged matrix row");
    rows.push_back(std::move(row));
  }
  return rows;
}

KindVector parse_kinds(const std::string& line, const std::string& header) {
  std::istringstream ls(line);
  std::string word;
  ls >> word;
  if (word != header) throw ParseError("expected '" + header + "' line");
  KindVector kinds;
  while (ls >> word) {
    if (word == "s")
      kinds.push_back(RowKind::standard);
    else if (word == "p")
      kinds.push_back(RowKind::minplus);
    else
      throw ParseError("kind must be 's' or 'p', got '" + word + "'");
  }
  if (kinds.empty()) throw ParseError("empty kind list after " + header);
  return kinds;
}

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) return line;
  }
  throw ParseError("unexpected end of file");
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

MinPlusMatrix parse_minplus_matrix(std::istream& in) {
  const auto rows = parse_grid(in, std::size_t(-1));
  if (rows.empty()) throw ParseError("empty matrix");
  MinPlusMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      m.at(i, j) = rows[i][j];
  return m;
}

MinPlusMatrix parse_minplus_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_minplus_matrix(in);
}

void write_minplus_matrix(std::ostream& out, const MinPlusMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      const ExtendedReal e = m.at(i, j);
      out << (e.is_finite() ? format_double(e.value()) : e.str());
    }
    out << '\n';
  }
}

HybridMatrix parse_hybrid_matrix(std::istream& in) {
  const KindVector rows = parse_kinds(next_content_line(in), "rows:");
  const KindVector cols = parse_kinds(next_content_line(in), "cols:");
  const auto grid = parse_grid(in, rows.size());
  if (grid.size() != rows.size() ||
      (grid.size() && grid.front().size() != cols.size()))
    throw ParseError("hybrid grid does not match the declared partition");
  HybridMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = grid[i][j];
  return m;
}

void write_hybrid_matrix(std::ostream& out, const HybridMatrix& m) {
  auto kinds = [&](const KindVector& ks) {
    std::string s;
    for (auto k : ks) s += k == RowKind::standard ? " s" : " p";
    return s;
  };
  out << "rows:" << kinds(m.row_kinds()) << "\ncols:" << kinds(m.col_kinds())
      << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      const ExtendedReal e = m.at(i, j);
      out << (e.is_finite() ? format_double(e.value()) : e.str());
    }
    out << '\n';
  }
}

SystemDyn parse_system(std::istream& in) {
  const KindVector states = parse_kinds(next_content_line(in), "states:");
  const KindVector inputs = parse_kinds(next_content_line(in), "inputs:");
  const KindVector outputs = parse_kinds(next_content_line(in), "outputs:");
  SystemDyn s = SystemDyn::make(states, inputs, outputs);
  auto read_block = [&](const char* name, HybridMatrix& dst,
                        std::size_t rows, std::size_t cols) {
    const std::string head = next_content_line(in);
    std::istringstream probe(head);
    std::string tok;
    probe >> tok;
    if (tok != name) throw ParseError(std::string("expected '") + name + "'");
    const auto grid = parse_grid(in, rows);
    if (grid.size() != rows || (rows && grid.front().size() != cols))
      throw ParseError(std::string("block ") + name + " has wrong shape");
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) dst.at(i, j) = grid[i][j];
  };
  read_block("A:", s.a, states.size(), states.size());
  read_block("B:", s.b, states.size(), inputs.size());
  read_block("C:", s.c, outputs.size(), states.size());
  return s;
}

SystemDyn parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_system(in);
}

void write_system(std::ostream& out, const SystemDyn& s) {
  auto kinds = [&](const KindVector& ks) {
    std::string str;
    for (auto k : ks) str += k == RowKind::standard ? " s" : " p";
    return str;
  };
  out << "states:" << kinds(s.state_kinds) << "\ninputs:"
      << kinds(s.input_kinds) << "\noutputs:" << kinds(s.output_kinds) << '\n';
  auto block = [&](const char* name, const HybridMatrix& m) {
    out << name << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) out << ' ';
        const ExtendedReal e = m.at(i, j);
        out << (e.is_finite() ? format_double(e.value()) : e.str());
      }
      out << '\n';
    }
  };
  block("A:", s.a);
  block("B:", s.b);
  block("C:", s.c);
}

PetriNet parse_net_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("net JSON: ") + e.what());
  }
  PetriNet net;
  try {
    for (const auto& t : j.at("transitions"))
      net.add_transition(t.get<std::string>());
    struct Pending {
      std::size_t place;
      std::string down;
    };
    std::vector<Pending> syncs;
    for (const auto& p : j.at("places")) {
      const std::size_t idx = net.add_place(p.at("id").get<std::string>(),
                                            p.at("marking").get<double>());
      if (p.contains("downstream"))
        syncs.push_back({idx, p.at("downstream").get<std::string>()});
    }
    for (const auto& s : syncs) {
      const auto q = net.find_transition(s.down);
      if (!q) throw ParseError("unknown downstream transition '" + s.down + "'");
      net.add_sync(s.place, *q);
    }
    if (j.contains("production")) {
      for (const auto& e : j.at("production")) {
        const auto q = net.find_transition(e.at("transition").get<std::string>());
        const auto p = net.find_place(e.at("place").get<std::string>());
        if (!q || !p) throw ParseError("production edge references unknown node");
        net.add_production(*q, *p, e.at("multiplicity").get<double>(),
                           e.value("delay", 1));
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("net JSON: ") + e.what());
  }
  return net;
}

PetriNet parse_net_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_net_json(in);
}

std::string net_to_json(const PetriNet& net) {
  nlohmann::json j;
  j["transitions"] = nlohmann::json::array();
  for (std::size_t q = 0; q < net.transition_count(); ++q)
    j["transitions"].push_back(net.transition(q));
  j["places"] = nlohmann::json::array();
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    nlohmann::json jp;
    jp["id"] = net.place(p).id;
    jp["marking"] = net.place(p).marking;
    const auto down = net.downstream(p);
    if (down.size() == 1) jp["downstream"] = net.transition(down[0]);
    j["places"].push_back(jp);
  }
  j["production"] = nlohmann::json::array();
  for (const auto& e : net.productions()) {
    nlohmann::json je;
    je["transition"] = net.transition(e.transition);
    je["place"] = net.place(e.place).id;
    je["multiplicity"] = e.multiplicity;
    if (e.delay != 1) je["delay"] = e.delay;
    j["production"].push_back(je);
  }
  return j.dump(2);
}

std::string diagram_csv(const std::vector<DiagramPoint>& points) {
  std::ostringstream out;
  out << "d,lambda_exact,lambda_approx,chi_sim,phase,n,m,seed,K0,K\n";
  for (const auto& p : points) {
    out << format_double(p.d) << ',' << format_double(p.lambda_exact) << ','
        << format_double(p.lambda_approx) << ',' << format_double(p.chi_sim)
        << ',' << phase_name(p.phase) << ',' << p.n << ',' << p.m << ','
        << p.seed << ',' << p.burn_in << ',' << p.horizon << '\n';
  }
  return out.str();
}

std::string diagram_svg(const std::vector<DiagramPoint>& points) {
  const double w = 640, h = 420, ml = 60, mb = 50, mt = 20, mr = 20;
  double ymax = 0.3;
  for (const auto& p : points)
    ymax = std::max({ymax, p.lambda_exact, p.chi_sim});
  auto px = [&](double d) { return ml + d * (w - ml - mr); };
  auto py = [&](double v) { return h - mb - (v / ymax) * (h - mt - mb); };
  std::ostringstream s;
  s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='"
    << h << "'>\n";
  s << "<rect width='100%' height='100%' fill='white'/>\n";
  s << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr
    << "' y2='" << h - mb << "' stroke='black'/>\n";
  s << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='"
    << h - mb << "' stroke='black'/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double d = i / 5.0;
    s << "<text x='" << px(d) << "' y='" << h - mb + 18
      << "' font-size='11' text-anchor='middle'>" << format_double(d)
      << "</text>\n";
    const double v = ymax * i / 5.0;
    s << "<text x='" << ml - 8 << "' y='" << py(v) + 4
      << "' font-size='11' text-anchor='end'>" << format_double(v)
      << "</text>\n";
  }
  auto polyline = [&](const char* color, bool exact) {
    std::ostringstream pts;
    for (const auto& p : points)
      pts << px(p.d) << ',' << py(exact ? p.lambda_exact : p.chi_sim) << ' ';
    s << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='"
      << pts.str() << "'/>\n";
  };
  polyline("#1f77b4", true);
  polyline("#d62728", false);
  s << "<text x='" << w / 2 << "' y='" << h - 12
    << "' font-size='12' text-anchor='middle'>density d</text>\n";
  s << "<text x='" << w - mr - 200 << "' y='" << mt + 14
    << "' font-size='12' fill='#1f77b4'>eigenvalue lambda(d)</text>\n";
  s << "<text x='" << w - mr - 200 << "' y='" << mt + 30
    << "' font-size='12' fill='#d62728'>growth rate chi(d)</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace minplus
