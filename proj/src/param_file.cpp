#include "sbn/param_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "sbn/errors.hpp"
#include "sbn/newick.hpp"

namespace sbn {

namespace {

std::string Probability(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", p);
  return buffer;
}

void WriteTaxa(std::ostream &out, const TaxonSet &taxa) {
  out << "taxa\t";
  for (size_t i = 0; i < taxa.Size(); ++i) {
    const auto &name = taxa.Name(i);
    if (name.find_first_of(",|\t\n") != std::string::npos) {
      throw ValidationError("taxon name '" + name + "' cannot be stored in a parameter file");
    }
    out << (i == 0 ? "" : ",") << name;
  }
  out << '\n';
}

std::vector<std::string> SplitOn(const std::string &text, char separator) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t end = text.find(separator, start);
    fields.push_back(text.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return fields;
}

// A record with its position, for error messages.
struct Line {
  std::vector<std::string> fields;
  size_t number;
};

double ParseProbability(const std::string &text, size_t line) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw ParseError("invalid probability '" + text + "'", line, 1);
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError("line " + std::to_string(line) + ": probability " + text +
                          " outside [0, 1]");
  }
  return value;
}

// Rethrows clade and subsplit parse failures with the record's line.
template <typename F>
auto AtLine(size_t line, F &&f) {
  try {
    return f();
  } catch (const ParseError &e) {
    throw ParseError(e.what(), line, 1);
  } catch (const ValidationError &e) {
    throw ValidationError("line " + std::to_string(line) + ": " + e.what());
  } catch (const IncompatibleError &e) {
    throw ValidationError("line " + std::to_string(line) + ": " + e.what());
  } catch (const InvalidSubsplitError &e) {
    throw ParseError(e.what(), line, 1);
  }
}

void ExpectFields(const Line &line, size_t count) {
  if (line.fields.size() != count) {
    throw ParseError("'" + line.fields[0] + "' records have " + std::to_string(count - 1) +
                         " fields, found " + std::to_string(line.fields.size() - 1),
                     line.number, 1);
  }
}

}  // namespace

void WriteParams(std::ostream &out, const SbnParams &params) {
  const TaxonSet &taxa = *params.Taxa();
  out << "sbn-params v1\n";
  WriteTaxa(out, taxa);
  for (const auto &[split, p] : params.SortedRoots()) {
    out << "root\t" << SubsplitToString(split, taxa) << '\t' << Probability(p) << '\n';
  }
  for (const auto &[context, children] : params.Groups()) {
    for (const auto &[child, p] : children) {
      out << "pcsp\t" << SubsplitToString(context.parent, taxa) << '\t'
          << CladeToString(context.focal, taxa) << '\t' << SubsplitToString(child, taxa) << '\t'
          << Probability(p) << '\n';
    }
  }
}

void WriteParams(std::ostream &out, const CcdParams &params) {
  const TaxonSet &taxa = *params.Taxa();
  out << "ccd-params v1\n";
  WriteTaxa(out, taxa);
  for (const auto &[clade, splits] : params.Sorted()) {
    for (const auto &[split, p] : splits) {
      out << "split\t" << SubsplitToString(split, taxa) << '\t' << Probability(p) << '\n';
    }
  }
}

void WriteParams(std::ostream &out, const SrfParams &params) {
  out << "srf-params v1\n";
  WriteTaxa(out, *params.Taxa());
  for (const auto &[id, p] : params.Sorted()) {
    out << "tree\t" << Probability(p) << '\t' << id.key << '\n';
  }
}

void WriteParams(std::ostream &out, const AnyParams &params) {
  std::visit([&out](const auto &p) { WriteParams(out, p); }, params);
}

AnyParams ReadParams(std::istream &in) {
  std::vector<Line> lines;
  std::string text;
  size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty() || text[0] == '#') continue;
    lines.push_back({SplitOn(text, '\t'), number});
  }
  if (lines.empty()) throw ParseError("empty parameter file", 1, 1);
  const std::string header = lines[0].fields[0];
  if (lines[0].fields.size() != 1 ||
      (header != "sbn-params v1" && header != "ccd-params v1" && header != "srf-params v1")) {
    throw ParseError("unrecognized header '" + header + "'", lines[0].number, 1);
  }
  if (lines.size() < 2 || lines[1].fields[0] != "taxa" || lines[1].fields.size() != 2) {
    throw ParseError("expected a taxa line after the header",
                     lines.size() < 2 ? lines[0].number + 1 : lines[1].number, 1);
  }
  const TaxonSetPtr taxa =
      AtLine(lines[1].number, [&] { return MakeTaxa(SplitOn(lines[1].fields[1], ',')); });
  const auto records = std::span(lines).subspan(2);

  auto bad_record = [](const Line &line) {
    return ParseError("unexpected record '" + line.fields[0] + "'", line.number, 1);
  };

  if (header == "sbn-params v1") {
    SbnParams params(taxa);
    for (const auto &line : records) {
      if (line.fields[0] == "root") {
        ExpectFields(line, 3);
        AtLine(line.number, [&] {
          params.SetRoot(SubsplitFromString(line.fields[1], *taxa),
                         ParseProbability(line.fields[2], line.number));
          return 0;
        });
      } else if (line.fields[0] == "pcsp") {
        ExpectFields(line, 5);
        AtLine(line.number, [&] {
          const auto parent = SubsplitFromString(line.fields[1], *taxa);
          const auto focal = CladeFromString(line.fields[2], *taxa);
          const auto child = SubsplitFromString(line.fields[3], *taxa);
          const auto pcsp = MakePcsp(parent, child);
          if (pcsp.focal != focal) {
            throw ValidationError("focal clade does not match the child subsplit");
          }
          params.SetConditional(pcsp, ParseProbability(line.fields[4], line.number));
          return 0;
        });
      } else {
        throw bad_record(line);
      }
    }
    params.Validate(kLoadTolerance);
    return params;
  }
  if (header == "ccd-params v1") {
    CcdParams params(taxa);
    for (const auto &line : records) {
      if (line.fields[0] != "split") throw bad_record(line);
      ExpectFields(line, 3);
      AtLine(line.number, [&] {
        params.Set(SubsplitFromString(line.fields[1], *taxa),
                   ParseProbability(line.fields[2], line.number));
        return 0;
      });
    }
    params.Validate(kLoadTolerance);
    return params;
  }
  SrfParams params(taxa);
  for (const auto &line : records) {
    if (line.fields[0] != "tree") throw bad_record(line);
    ExpectFields(line, 3);
    const double p = ParseProbability(line.fields[1], line.number);
    const NewickNode syntax = ParseNewickSyntax(line.fields[2], line.number,
                                                line.fields[0].size() + line.fields[1].size() + 3);
    const auto tree = AtLine(line.number, [&] { return AsUnrooted(ToTopology(syntax, taxa)); });
    params.Set(TreeIdOf(tree), p);
  }
  params.Validate(kLoadTolerance);
  return params;
}

AnyParams ReadParamsFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return ReadParams(in);
}

void WriteParamsFile(const std::string &path, const AnyParams &params) {
  // Render first so that a failure leaves no partial file behind.
  std::ostringstream text;
  WriteParams(text, params);
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text.str();
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

const TaxonSetPtr &TaxaOf(const AnyParams &params) {
  return std::visit([](const auto &p) -> const TaxonSetPtr & { return p.Taxa(); }, params);
}

Evaluator MakeEvaluator(const AnyParams &params) {
  return std::visit([](const auto &p) { return MakeEvaluator(p); }, params);
}

}  // namespace sbn
