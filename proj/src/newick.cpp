#include "sbn/newick.hpp"

#include <charconv>
#include <functional>

#include "sbn/errors.hpp"

namespace sbn {

namespace {

constexpr std::string_view kPunctuation = "()[]':;,";

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class NewickParser {
 public:
  NewickParser(std::string_view text, size_t line, size_t column)
      : text_(text), line_(line), column_(column) {}

  NewickNode ParseTree() {
    SkipSpace();
    if (AtEnd()) Fail("empty tree");
    NewickNode root = ParseSubtree();
    SkipSpace();
    if (AtEnd() || Peek() != ';') Fail("expected ';'");
    Advance();
    SkipSpace();
    if (!AtEnd()) Fail("unexpected text after ';'");
    return root;
  }

 private:
  NewickNode ParseSubtree() {
    SkipSpace();
    NewickNode node;
    node.line = line_;
    node.column = column_;
    if (!AtEnd() && Peek() == '(') {
      Advance();
      node.children.push_back(ParseSubtree());
      SkipSpace();
      while (!AtEnd() && Peek() == ',') {
        Advance();
        node.children.push_back(ParseSubtree());
        SkipSpace();
      }
      if (AtEnd() || Peek() != ')') Fail("expected ',' or ')'");
      Advance();
      SkipSpace();
      // Internal labels (support values, names) are discarded.
      ParseLabel();
    } else {
      node.name = ParseLabel();
      if (node.name.empty()) Fail("expected a taxon name or '('");
    }
    SkipSpace();
    if (!AtEnd() && Peek() == ':') {
      Advance();
      ParseBranchLength();
    }
    return node;
  }

  std::string ParseLabel() {
    std::string label;
    if (AtEnd()) return label;
    if (Peek() == '\'') {
      Advance();
      while (true) {
        if (AtEnd()) Fail("unterminated quoted label");
        char c = Peek();
        Advance();
        if (c == '\'') {
          if (!AtEnd() && Peek() == '\'') {
            label += '\'';
            Advance();
            continue;
          }
          break;
        }
        label += c;
      }
      return label;
    }
    while (!AtEnd() && !IsSpace(Peek()) && kPunctuation.find(Peek()) == std::string_view::npos) {
      label += Peek();
      Advance();
    }
    return label;
  }

  void ParseBranchLength() {
    SkipSpace();
    const size_t start = pos_;
    const size_t line = line_;
    const size_t column = column_;
    while (!AtEnd() && !IsSpace(Peek()) && kPunctuation.find(Peek()) == std::string_view::npos) {
      Advance();
    }
    const std::string_view token = text_.substr(start, pos_ - start);
    double value = 0.0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw ParseError("invalid branch length '" + std::string(token) + "'", line, column);
    }
  }

  void SkipSpace() {
    while (!AtEnd()) {
      if (IsSpace(Peek())) {
        Advance();
      } else if (Peek() == '[') {
        const size_t line = line_;
        const size_t column = column_;
        while (!AtEnd() && Peek() != ']') Advance();
        if (AtEnd()) throw ParseError("unterminated comment", line, column);
        Advance();
      } else {
        break;
      }
    }
  }

  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return text_[pos_]; }
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  [[noreturn]] void Fail(const std::string &message) const {
    throw ParseError(message, line_, column_);
  }

  std::string_view text_;
  size_t pos_ = 0;
  size_t line_;
  size_t column_;
};

void CollectLeafNames(const NewickNode &node, std::vector<std::string> &names) {
  if (node.children.empty()) {
    names.push_back(node.name);
    return;
  }
  for (const auto &child : node.children) CollectLeafNames(child, names);
}

class TopologyBuilder {
 public:
  explicit TopologyBuilder(const TaxonSetPtr &taxa)
      : taxa_(taxa), seen_(taxa->Size(), false) {}

  // Rooted: returns node index.
  int AddRooted(const NewickNode &node, std::vector<RootedTopology::Node> &nodes) {
    RootedTopology::Node out;
    if (node.children.empty()) {
      out.taxon = ResolveLeaf(node);
    } else {
      CheckBinary(node);
      out.left = AddRooted(node.children[0], nodes);
      out.right = AddRooted(node.children[1], nodes);
    }
    nodes.push_back(out);
    return static_cast<int>(nodes.size()) - 1;
  }

  // Unrooted: returns the vertex id of `node`.
  int AddUnrooted(const NewickNode &node, std::vector<std::pair<int, int>> &edges) {
    if (node.children.empty()) return ResolveLeaf(node);
    CheckBinary(node);
    const int vertex = next_internal_++;
    for (const auto &child : node.children) edges.emplace_back(vertex, AddUnrooted(child, edges));
    return vertex;
  }

  int NextInternal() { return next_internal_++; }

  void CheckComplete() const {
    for (size_t i = 0; i < seen_.size(); ++i) {
      if (!seen_[i]) throw ValidationError("tree is missing taxon '" + taxa_->Name(i) + "'");
    }
  }

 private:
  int ResolveLeaf(const NewickNode &node) {
    auto index = taxa_->Find(node.name);
    if (!index) throw ParseError("unknown taxon '" + node.name + "'", node.line, node.column);
    if (seen_[*index]) {
      throw ParseError("duplicate taxon '" + node.name + "'", node.line, node.column);
    }
    seen_[*index] = true;
    return static_cast<int>(*index);
  }

  static void CheckBinary(const NewickNode &node) {
    if (node.children.size() != 2) {
      throw ParseError(node.children.size() == 1
                           ? "internal node with a single child"
                           : "multifurcation below the root (" +
                                 std::to_string(node.children.size()) + " children)",
                       node.line, node.column);
    }
  }

  const TaxonSetPtr &taxa_;
  std::vector<bool> seen_;
  int next_internal_ = static_cast<int>(taxa_->Size());
};

}  // namespace

NewickNode ParseNewickSyntax(std::string_view text, size_t first_line, size_t first_column) {
  return NewickParser(text, first_line, first_column).ParseTree();
}

std::vector<std::string> LeafNames(const NewickNode &root) {
  std::vector<std::string> names;
  CollectLeafNames(root, names);
  return names;
}

ParsedTree ToTopology(const NewickNode &root, const TaxonSetPtr &taxa) {
  if (!taxa) throw UsageError("parsing needs a taxon set");
  TopologyBuilder builder(taxa);
  const size_t arity = root.children.size();
  if (arity == 2) {
    std::vector<RootedTopology::Node> nodes;
    nodes.reserve(2 * taxa->Size());
    const int root_index = builder.AddRooted(root, nodes);
    builder.CheckComplete();
    return RootedTopology(taxa, std::move(nodes), root_index);
  }
  if (arity == 3) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(2 * taxa->Size());
    const int center = builder.NextInternal();
    for (const auto &child : root.children) {
      edges.emplace_back(center, builder.AddUnrooted(child, edges));
    }
    builder.CheckComplete();
    return UnrootedTopology(taxa, edges);
  }
  if (arity == 0) throw ParseError("a tree needs at least two leaves", root.line, root.column);
  throw ParseError(arity == 1 ? "root with a single child"
                              : "root with " + std::to_string(arity) +
                                    " children; only binary or trifurcating roots are allowed",
                   root.line, root.column);
}

ParsedTree ParseNewick(std::string_view text, const TaxonSetPtr &taxa) {
  return ToTopology(ParseNewickSyntax(text), taxa);
}

UnrootedTopology AsUnrooted(const ParsedTree &tree) {
  if (const auto *rooted = std::get_if<RootedTopology>(&tree)) return Unroot(*rooted).tree;
  return std::get<UnrootedTopology>(tree);
}

std::string QuoteLabel(const std::string &label) {
  bool needs_quotes = label.empty();
  for (char c : label) {
    if (IsSpace(c) || kPunctuation.find(c) != std::string_view::npos) needs_quotes = true;
  }
  if (!needs_quotes) return label;
  std::string out = "'";
  for (char c : label) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

std::string WriteNewick(const RootedTopology &tree) {
  const auto clades = tree.NodeClades();
  const auto &taxa = *tree.Taxa();
  std::function<void(int, std::string &)> write = [&](int index, std::string &out) {
    const auto &node = tree.At(index);
    if (node.IsLeaf()) {
      out += QuoteLabel(taxa.Name(static_cast<size_t>(node.taxon)));
      return;
    }
    int first = node.left;
    int second = node.right;
    if (clades[static_cast<size_t>(first)] < clades[static_cast<size_t>(second)]) {
      std::swap(first, second);
    }
    out += '(';
    write(first, out);
    out += ',';
    write(second, out);
    out += ')';
  };
  std::string out;
  write(tree.Root(), out);
  return out + ";";
}

std::string WriteNewick(const UnrootedTopology &tree) {
  const auto &taxa = *tree.Taxa();
  // Adjacency lists hold the parent first and children in decreasing clade order.
  std::function<void(int, std::string &)> write = [&](int vertex, std::string &out) {
    if (tree.IsLeaf(vertex)) {
      out += QuoteLabel(taxa.Name(static_cast<size_t>(vertex)));
      return;
    }
    const auto &adj = tree.Neighbors(vertex);
    out += '(';
    write(adj.vertex[1], out);
    out += ',';
    write(adj.vertex[2], out);
    out += ')';
  };
  const int center = tree.EdgeAt(0).head;
  const auto &adj = tree.Neighbors(center);
  std::string out = "(" + QuoteLabel(taxa.Name(0)) + ",";
  write(adj.vertex[1], out);
  out += ',';
  write(adj.vertex[2], out);
  return out + ");";
}

std::string WriteNewick(const ParsedTree &tree) {
  return std::visit([](const auto &t) { return WriteNewick(t); }, tree);
}

TreeId TreeIdOf(const RootedTopology &tree) { return {WriteNewick(tree)}; }
TreeId TreeIdOf(const UnrootedTopology &tree) { return {WriteNewick(tree)}; }

}  // namespace sbn
