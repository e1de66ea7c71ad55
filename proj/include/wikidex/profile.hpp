#ifndef WIKIDEX_PROFILE_HPP
#define WIKIDEX_PROFILE_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wikidex/catgraph.hpp"
#include "wikidex/detail/tsv.hpp"
#include "wikidex/errors.hpp"
#include "wikidex/relatedness.hpp"

namespace wikidex {

// One interest: a set of categories that never contain each other
// (ancestor-free), plus the information sources bound to it.
struct Topic {
  std::string name;
  std::set<std::string> categories;
  std::set<std::string> sources;
};

struct Profile {
  std::vector<Topic> topics;                  // names unique
  std::map<std::string, std::string> origin;  // generation record
};

struct ProfileParams {
  uint64_t k_similar = 10;
  uint64_t top_categories_per_doc = 10;
  double cluster_threshold = 0.5;
  uint32_t ancestor_depth = kUnlimitedDepth;
};

// Accumulated support for one category across the user's documents.
struct CategoryEvidence {
  double weight = 0.0;
  std::set<std::string> docs;
};

// Agglomerative single-linkage clustering over document-support
// Jaccard similarity. Clusters merge while the best single-link
// similarity is ≥ threshold; equal-similarity ties merge the
// lexicographically smallest category pair first. The result
// partitions the input; parts are ordered by smallest member.
inline std::vector<std::set<std::string>> cluster_categories(
    const std::map<std::string, CategoryEvidence>& weighted, double threshold) {
  std::vector<std::string> cats;
  cats.reserve(weighted.size());
  for (const auto& [cat, ev] : weighted) cats.push_back(cat);
  const size_t n = cats.size();

  const auto jaccard = [&](size_t i, size_t j) {
    const auto& a = weighted.at(cats[i]).docs;
    const auto& b = weighted.at(cats[j]).docs;
    size_t inter = 0;
    for (const auto& d : a) inter += b.count(d);
    const size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
  };

  std::vector<size_t> cluster_of(n);
  for (size_t i = 0; i < n; ++i) cluster_of[i] = i;

  for (;;) {
    double best = -1.0;
    size_t bi = n, bj = n;  // category indices of the best pair
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (cluster_of[i] == cluster_of[j]) continue;
        const double s = jaccard(i, j);
        // cats is sorted, so (i, j) ascending scans pairs in
        // lexicographic order; strict > keeps the first maximum.
        if (s > best) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n || best < threshold) break;
    const size_t from = cluster_of[bj], into = cluster_of[bi];
    for (auto& c : cluster_of) {
      if (c == from) c = into;
    }
  }

  std::map<size_t, std::set<std::string>> groups;
  for (size_t i = 0; i < n; ++i) groups[cluster_of[i]].insert(cats[i]);
  std::vector<std::set<std::string>> out;
  out.reserve(groups.size());
  std::vector<std::pair<std::string, std::set<std::string>>> ordered;
  for (auto& [id, members] : groups) ordered.emplace_back(*members.begin(), std::move(members));
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, members] : ordered) out.push_back(std::move(members));
  return out;
}

struct GeneratedProfile {
  Profile profile;
  std::map<std::string, double> category_weights;  // evidence behind topics
  std::vector<std::string> warnings;
};

// The full derivation: per document, find the most similar indexed
// articles; propagate each article's similarity score onto its
// categories; keep each document's strongest categories; cluster the
// survivors by shared document support; make each cluster ancestor-free
// (the more specific category wins); name each topic after its
// heaviest category. Deterministic for fixed inputs.
inline GeneratedProfile generate_profile(
    const std::vector<std::pair<std::string, std::string>>& user_docs,
    const Index& index, const CategoryGraph& graph, const NormalizerConfig& cfg,
    const ProfileParams& params) {
  if (user_docs.empty()) throw InputError("no user documents given");
  if (params.k_similar < 1 || params.top_categories_per_doc < 1 ||
      params.cluster_threshold <= 0.0 || params.cluster_threshold > 1.0) {
    throw InputError("invalid profile parameters");
  }

  GeneratedProfile result;
  std::map<std::string, CategoryEvidence> evidence;

  for (const auto& [doc_id, text] : user_docs) {
    const auto sims = similar_articles(index, text, cfg, params.k_similar);
    if (sims.empty()) {
      result.warnings.push_back("document '" + doc_id +
                                "' matched no indexed article; excluded");
      continue;
    }
    std::map<std::string, double> doc_weights;
    for (const auto& hit : sims) {
      const auto it = graph.article_cats().find(hit.article_id);
      if (it == graph.article_cats().end()) continue;
      for (const auto& cat : it->second) doc_weights[cat] += hit.score;
    }
    // Keep the document's strongest categories only.
    std::vector<std::pair<std::string, double>> top(doc_weights.begin(),
                                                    doc_weights.end());
    std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (top.size() > params.top_categories_per_doc) {
      top.resize(params.top_categories_per_doc);
    }
    for (const auto& [cat, w] : top) {
      evidence[cat].weight += w;
      evidence[cat].docs.insert(doc_id);
    }
  }

  if (evidence.empty()) {
    throw DomainError("no category evidence: every document was excluded");
  }
  result.category_weights.clear();
  for (const auto& [cat, ev] : evidence) result.category_weights[cat] = ev.weight;

  const auto clusters = cluster_categories(evidence, params.cluster_threshold);

  struct Built {
    Topic topic;
    double weight = 0.0;
  };
  std::vector<Built> built;
  for (const auto& members : clusters) {
    // Simultaneous ancestor removal over the original cluster: a
    // member that is an ancestor of any other member is dropped.
    std::set<std::string> kept;
    for (const auto& cat : members) {
      bool is_anc = false;
      for (const auto& other : members) {
        if (other != cat && graph.is_ancestor(cat, other, params.ancestor_depth)) {
          is_anc = true;
          break;
        }
      }
      if (!is_anc) kept.insert(cat);
    }
    if (kept.empty()) continue;  // cycle degenerated the cluster

    Built b;
    std::string best_cat;
    double best_w = -1.0;
    for (const auto& cat : kept) {
      const double w = evidence.at(cat).weight;
      b.weight += w;
      if (w > best_w || (w == best_w && cat < best_cat)) {
        best_w = w;
        best_cat = cat;
      }
    }
    b.topic.name = best_cat;
    b.topic.categories = std::move(kept);
    built.push_back(std::move(b));
  }
  if (built.empty()) {
    throw DomainError("clustering yielded no usable topic");
  }
  std::sort(built.begin(), built.end(), [](const Built& a, const Built& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.topic.name < b.topic.name;
  });
  for (auto& b : built) result.profile.topics.push_back(std::move(b.topic));

  auto& origin = result.profile.origin;
  origin["corpus_digest"] = index.source_digest();
  origin["k_similar"] = std::to_string(params.k_similar);
  origin["top_categories_per_doc"] = std::to_string(params.top_categories_per_doc);
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", params.cluster_threshold);
    origin["cluster_threshold"] = buf;
  }
  origin["ancestor_depth"] = params.ancestor_depth == kUnlimitedDepth
                                 ? "unlimited"
                                 : std::to_string(params.ancestor_depth);
  origin["documents"] = std::to_string(user_docs.size());
  return result;
}

inline Topic* find_topic(Profile& profile, std::string_view name) {
  for (auto& t : profile.topics) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

// Adds a category, enforcing the ancestor-free invariant: an addition
// that is an ancestor or descendant of an existing member is rejected
// naming the conflicting member. Unknown categories are accepted with
// a warning. Returns warnings.
inline std::vector<std::string> add_category(Profile& profile,
                                             std::string_view topic_name,
                                             const std::string& category,
                                             const CategoryGraph& graph,
                                             uint32_t ancestor_depth = kUnlimitedDepth) {
  Topic* topic = find_topic(profile, topic_name);
  if (topic == nullptr) {
    throw InputError("no such topic: " + std::string(topic_name));
  }
  std::vector<std::string> warnings;
  if (topic->categories.count(category) != 0) {
    warnings.push_back("category '" + category + "' already present");
    return warnings;
  }
  for (const auto& member : topic->categories) {
    if (graph.is_ancestor(category, member, ancestor_depth)) {
      throw DomainError("cannot add '" + category + "': it is an ancestor of '" +
                        member + "'");
    }
    if (graph.is_ancestor(member, category, ancestor_depth)) {
      throw DomainError("cannot add '" + category + "': it is a descendant of '" +
                        member + "'");
    }
  }
  if (!graph.contains(category)) {
    warnings.push_back("category '" + category + "' is not in the category graph");
  }
  topic->categories.insert(category);
  return warnings;
}

// Removes a category; removing the last one deletes the topic (with a
// warning). Returns warnings.
inline std::vector<std::string> remove_category(Profile& profile,
                                                std::string_view topic_name,
                                                const std::string& category) {
  Topic* topic = find_topic(profile, topic_name);
  if (topic == nullptr) {
    throw InputError("no such topic: " + std::string(topic_name));
  }
  std::vector<std::string> warnings;
  if (topic->categories.erase(category) == 0) {
    warnings.push_back("category '" + category + "' was not in topic '" +
                       std::string(topic_name) + "'");
    return warnings;
  }
  if (topic->categories.empty()) {
    warnings.push_back("topic '" + std::string(topic_name) +
                       "' has no categories left; removed");
    profile.topics.erase(profile.topics.begin() +
                         (topic - profile.topics.data()));
  }
  return warnings;
}

// ---- persistence ----------------------------------------------------
//
// Profile file grammar (UTF-8, LF, tab separated, `#` comments and
// blank lines ignored):
//   version <TAB> 1
//   origin  <TAB> key <TAB> value          zero or more
//   topic   <TAB> name                     opens a topic
//   category <TAB> title                   one or more per topic
//   source  <TAB> id                       zero or more per topic
// Any other key is rejected, naming the offending line number.

constexpr std::string_view kProfileFormatVersion = "1";

inline void save_profile(const Profile& profile,
                         const std::filesystem::path& path) {
  std::string out;
  out += "version\t" + std::string(kProfileFormatVersion) + "\n";
  for (const auto& [key, value] : profile.origin) {
    out += "origin\t" + detail::tsv_escape(key) + "\t" +
           detail::tsv_escape(value) + "\n";
  }
  for (const auto& topic : profile.topics) {
    out += "topic\t" + detail::tsv_escape(topic.name) + "\n";
    for (const auto& cat : topic.categories) {
      out += "category\t" + detail::tsv_escape(cat) + "\n";
    }
    for (const auto& src : topic.sources) {
      out += "source\t" + detail::tsv_escape(src) + "\n";
    }
  }
  detail::write_file_atomic(path, out);
}

inline Profile load_profile(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  Profile profile;
  std::optional<std::string> version;
  Topic* current = nullptr;
  std::set<std::string> names;

  const auto lines = detail::split_lines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    const auto at = [&] { return " at line " + std::to_string(ln + 1); };
    const auto line = lines[ln];
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    const auto fields = detail::tsv_fields(line);
    const std::string& key = fields[0];
    if (key == "version" && fields.size() == 2) {
      if (version) throw InputError("duplicate version" + at());
      version = fields[1];
      if (*version != kProfileFormatVersion) {
        throw FormatVersionError("unsupported profile version '" + *version +
                                 "'" + at());
      }
    } else if (key == "origin" && fields.size() == 3) {
      profile.origin[detail::tsv_unescape(fields[1])] =
          detail::tsv_unescape(fields[2]);
    } else if (key == "topic" && fields.size() == 2) {
      if (current != nullptr && current->categories.empty()) {
        throw InputError("topic '" + current->name + "' has no categories" + at());
      }
      Topic t;
      t.name = detail::tsv_unescape(fields[1]);
      if (!names.insert(t.name).second) {
        throw InputError("duplicate topic name '" + t.name + "'" + at());
      }
      profile.topics.push_back(std::move(t));
      current = &profile.topics.back();
    } else if (key == "category" && fields.size() == 2) {
      if (current == nullptr) throw InputError("category before any topic" + at());
      current->categories.insert(detail::tsv_unescape(fields[1]));
    } else if (key == "source" && fields.size() == 2) {
      if (current == nullptr) throw InputError("source before any topic" + at());
      current->sources.insert(detail::tsv_unescape(fields[1]));
    } else {
      const bool known = key == "version" || key == "origin" || key == "topic" ||
                         key == "category" || key == "source";
      throw InputError(std::string(known ? "malformed" : "unknown") +
                       " profile entry '" + key + "'" + at());
    }
  }
  if (!version) throw InputError("profile file has no version line");
  if (current != nullptr && current->categories.empty()) {
    throw InputError("topic '" + current->name + "' has no categories");
  }
  return profile;
}

}  // namespace wikidex

#endif  // WIKIDEX_PROFILE_HPP
