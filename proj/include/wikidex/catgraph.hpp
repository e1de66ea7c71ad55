#ifndef WIKIDEX_CATGRAPH_HPP
#define WIKIDEX_CATGRAPH_HPP

#include <cstdint>
#include <deque>
#include <filesystem>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wikidex/corpus.hpp"
#include "wikidex/detail/tsv.hpp"
#include "wikidex/errors.hpp"
#include "wikidex/wikitext.hpp"

namespace wikidex {

constexpr uint32_t kUnlimitedDepth = std::numeric_limits<uint32_t>::max();

struct SubcatResult {
  std::set<std::string> categories;
  bool unknown_root = false;
};

// Category structure of a corpus: which categories exist, how they
// nest (child → parents), and which categories each article carries.
// The graph may contain cycles; every traversal is visited-guarded.
class CategoryGraph {
 public:
  // Records an article's category memberships (namespace-0 page).
  void add_article(int64_t article_id, const std::vector<std::string>& cats) {
    auto& set = article_cats_[article_id];
    for (const auto& c : cats) {
      set.insert(c);
      touch(c);
    }
  }

  // Records a category page (namespace 14): the page's own category
  // links name its parents.
  void add_category_page(const std::string& name,
                         const std::vector<std::string>& parents) {
    touch(name);
    auto& pset = parent_edges_[name];
    for (const auto& p : parents) {
      pset.insert(p);
      touch(p);
      children_[p].insert(name);
    }
  }

  // Category title of a namespace-14 page: the alias prefix is
  // dropped when present, first letter upper-cased.
  static std::string page_category_name(std::string_view title,
                                        const MarkupLangConfig& cfg) {
    const size_t colon = title.find(':');
    if (colon != std::string_view::npos && colon > 0 &&
        wt_detail::matches_alias(detail::trim(title.substr(0, colon)),
                                 cfg.category_aliases)) {
      title = title.substr(colon + 1);
    }
    return detail::uppercase_first(detail::trim(title));
  }

  void add_page(const RawPage& page, const MarkupLangConfig& cfg) {
    if (page.ns == kCategoryNamespace) {
      add_category_page(page_category_name(page.title, cfg),
                        extract_categories(page.wikitext, cfg));
    } else if (page.ns == kArticleNamespace) {
      add_article(page.page_id, extract_categories(page.wikitext, cfg));
    }
  }

  bool contains(std::string_view category) const {
    return categories_.count(std::string(category)) != 0;
  }

  const std::set<std::string>& categories() const { return categories_; }
  const std::map<std::string, std::set<std::string>>& parent_edges() const {
    return parent_edges_;
  }
  const std::map<int64_t, std::set<std::string>>& article_cats() const {
    return article_cats_;
  }

  const std::set<std::string>& parents_of(std::string_view category) const {
    static const std::set<std::string> kEmpty;
    const auto it = parent_edges_.find(std::string(category));
    return it == parent_edges_.end() ? kEmpty : it->second;
  }

  // Breadth-first closure downward from root (root included), at most
  // max_depth levels below it. A root the graph has never seen yields
  // just itself with the unknown flag set.
  SubcatResult subcategories(const std::string& root, uint32_t max_depth) const {
    SubcatResult result;
    result.unknown_root = !contains(root);
    result.categories.insert(root);
    if (result.unknown_root) return result;
    std::deque<std::pair<const std::string*, uint32_t>> queue;
    queue.push_back({&root, 0});
    while (!queue.empty()) {
      const auto [cat, depth] = queue.front();
      queue.pop_front();
      if (depth >= max_depth) continue;
      const auto it = children_.find(*cat);
      if (it == children_.end()) continue;
      for (const auto& child : it->second) {
        if (child == *cat) continue;  // self-loop
        if (result.categories.insert(child).second) {
          queue.push_back({&child, depth + 1});
        }
      }
    }
    return result;
  }

  // True iff `a` is reachable from `b` by walking parent edges within
  // max_depth steps. By convention a node is never its own ancestor.
  bool is_ancestor(const std::string& a, const std::string& b,
                   uint32_t max_depth = kUnlimitedDepth) const {
    if (a == b) return false;
    std::set<std::string> visited{b};
    std::deque<std::pair<const std::string*, uint32_t>> queue;
    queue.push_back({&b, 0});
    while (!queue.empty()) {
      const auto [cat, depth] = queue.front();
      queue.pop_front();
      if (depth >= max_depth) continue;
      const auto it = parent_edges_.find(*cat);
      if (it == parent_edges_.end()) continue;
      for (const auto& parent : it->second) {
        if (parent == *cat) continue;  // self-loop
        if (parent == a) return true;
        if (visited.insert(parent).second) queue.push_back({&parent, depth + 1});
      }
    }
    return false;
  }

  // Articles carrying any category inside any root's subtree.
  std::set<int64_t> articles_under(const std::set<std::string>& roots,
                                   uint32_t max_depth) const {
    std::set<std::string> closure;
    for (const auto& root : roots) {
      auto sub = subcategories(root, max_depth);
      closure.merge(sub.categories);
    }
    std::set<int64_t> out;
    for (const auto& [id, cats] : article_cats_) {
      for (const auto& c : cats) {
        if (closure.count(c) != 0) {
          out.insert(id);
          break;
        }
      }
    }
    return out;
  }

 private:
  void touch(const std::string& category) { categories_.insert(category); }

  std::set<std::string> categories_;
  std::map<std::string, std::set<std::string>> parent_edges_;  // child → parents
  std::map<std::string, std::set<std::string>> children_;     // parent → children
  std::map<int64_t, std::set<std::string>> article_cats_;
};

inline CategoryGraph build_graph(const std::vector<RawPage>& pages,
                                 const MarkupLangConfig& cfg) {
  CategoryGraph graph;
  for (const auto& page : pages) graph.add_page(page, cfg);
  return graph;
}

// ---- persistence ----------------------------------------------------
//
// Plain dump, one row per fact, sorted:
//   edge <TAB> child <TAB> parent
//   mem  <TAB> article_id <TAB> category

inline void save_catgraph(const CategoryGraph& graph,
                          const std::filesystem::path& path) {
  std::string out;
  for (const auto& [child, parents] : graph.parent_edges()) {
    for (const auto& parent : parents) {
      out += "edge\t" + detail::tsv_escape(child) + "\t" +
             detail::tsv_escape(parent) + "\n";
    }
  }
  for (const auto& [id, cats] : graph.article_cats()) {
    for (const auto& cat : cats) {
      out += "mem\t" + std::to_string(id) + "\t" + detail::tsv_escape(cat) + "\n";
    }
  }
  detail::write_file_atomic(path, out);
}

inline CategoryGraph load_catgraph(const std::filesystem::path& path) {
  CategoryGraph graph;
  const std::string text = detail::read_file(path);
  for (const auto line : detail::split_lines(text)) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::tsv_fields(line);
    if (fields.size() == 3 && fields[0] == "edge") {
      graph.add_category_page(detail::tsv_unescape(fields[1]),
                              {detail::tsv_unescape(fields[2])});
      continue;
    }
    long long id = 0;
    if (fields.size() == 3 && fields[0] == "mem" &&
        detail::parse_i64(fields[1], id)) {
      graph.add_article(id, {detail::tsv_unescape(fields[2])});
      continue;
    }
    throw InputError("malformed category graph row: " +
                     std::string(line.substr(0, 80)));
  }
  return graph;
}

}  // namespace wikidex

#endif  // WIKIDEX_CATGRAPH_HPP
