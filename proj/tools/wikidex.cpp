// wikidex — build constrained tf-idf indexes from wiki dumps, derive
// topic profiles from user documents, populate per-topic subcorpora,
// and rank incoming texts against a topic.
//
// Exit codes: 0 success, 2 usage/input error, 3 domain error,
// 1 unexpected failure.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wikidex/wikidex.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string lang = "en";
  std::string corpus;
  std::string index_dir;
  std::string stopwords_file;
  std::string stemmer_file;
  uint32_t min_token_len = 2;
  unsigned workers = wikidex::default_workers();
};

wikidex::NormalizerConfig make_ncfg(const CommonOpts& opts) {
  wikidex::NormalizerConfig cfg;
  cfg.min_token_len = opts.min_token_len;
  if (!opts.stemmer_file.empty()) {
    cfg.stemmer = wikidex::SuffixStemmer::from_file(opts.stemmer_file);
  }
  if (!opts.stopwords_file.empty()) {
    wikidex::load_stopwords_file(cfg, opts.stopwords_file);
  } else {
    wikidex::load_stopwords(cfg, wikidex::detail::builtin_stopwords(opts.lang));
  }
  return cfg;
}

// Directory name for a topic under <index-dir>/topics/.
std::string topic_slug(std::string_view name) {
  std::string slug;
  for (const char c : name) {
    const auto u = static_cast<unsigned char>(c);
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '_' ||
                      c == '.' || u >= 0x80;
    slug += keep ? c : '_';
  }
  return slug.empty() ? "_" : slug;
}

fs::path topic_dir(const std::string& index_dir, const std::string& topic) {
  return fs::path(index_dir) / "topics" / topic_slug(topic);
}

uint64_t dir_bytes(const fs::path& dir) {
  uint64_t total = 0;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) total += entry.file_size(ec);
  }
  return total;
}

// The four statistics rows reported for any index directory.
void print_stats(const wikidex::Index& index, const fs::path& dir) {
  const auto st = index.stats();
  std::printf("Wordform (unique words in corpus): %" PRIu64 "\n", st.wordform_count);
  std::printf("Word-article relations (<%" PRIu64 " for the word): %" PRIu64 "\n",
              index.constraints().max_postings_per_term, st.relation_count);
  std::printf("Words in corpus: %" PRIu64 "\n", st.words_in_corpus);
  std::printf("Size of dump file (archived) of index DB, MB: %.2f\n",
              static_cast<double>(dir_bytes(dir)) / 1e6);
}

std::vector<std::pair<std::string, std::string>> load_user_docs(
    const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw wikidex::InputError("not a directory: " + dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, std::string>> docs;
  for (const auto& file : files) {
    docs.emplace_back(file.filename().string(), wikidex::detail::read_file(file));
  }
  return docs;
}

// ---- subcommand bodies ------------------------------------------------

int cmd_index_build(const CommonOpts& opts,
                    const wikidex::IndexConstraints& constraints) {
  const auto mcfg = wikidex::MarkupLangConfig::for_language(opts.lang);
  const auto ncfg = make_ncfg(opts);
  auto built = wikidex::build_corpus_index(opts.corpus, mcfg, ncfg, constraints,
                                           opts.workers);
  wikidex::save_index(built.index, opts.index_dir);
  wikidex::save_catgraph(built.graph, fs::path(opts.index_dir) / "catgraph.tsv");

  std::fprintf(stderr,
               "indexed %" PRIu64 " articles (%" PRIu64 " category pages, %" PRIu64
               " redirects skipped, %" PRIu64 " malformed skipped, %" PRIu64
               " other-namespace dropped)\n",
               built.counts.pages_indexed, built.counts.category_pages,
               built.counts.redirects_skipped, built.counts.malformed_skipped,
               built.counts.namespaces_dropped);
  print_stats(built.index, opts.index_dir);
  return 0;
}

int cmd_index_stats(const CommonOpts& opts) {
  const auto index = wikidex::load_index(opts.index_dir);
  print_stats(index, opts.index_dir);
  return 0;
}

int cmd_profile_generate(const CommonOpts& opts, const std::string& docs_dir,
                         const std::string& profile_path,
                         const wikidex::ProfileParams& params) {
  const auto index = wikidex::load_index(opts.index_dir);
  const auto graph =
      wikidex::load_catgraph(fs::path(opts.index_dir) / "catgraph.tsv");
  const auto ncfg = make_ncfg(opts);
  const auto docs = load_user_docs(docs_dir);
  if (docs.empty()) {
    throw wikidex::InputError("no .txt documents in " + docs_dir);
  }
  auto generated = wikidex::generate_profile(docs, index, graph, ncfg, params);
  wikidex::save_profile(generated.profile, profile_path);

  for (const auto& w : generated.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  for (const auto& topic : generated.profile.topics) {
    std::printf("topic\t%s\n", topic.name.c_str());
    for (const auto& cat : topic.categories) {
      const auto it = generated.category_weights.find(cat);
      std::printf("  category\t%s\t%.6f\n", cat.c_str(),
                  it == generated.category_weights.end() ? 0.0 : it->second);
    }
  }
  std::fprintf(stderr, "profile written to %s\n", profile_path.c_str());
  return 0;
}

int cmd_profile_show(const std::string& profile_path) {
  const auto profile = wikidex::load_profile(profile_path);
  for (const auto& [key, value] : profile.origin) {
    std::printf("origin\t%s\t%s\n", key.c_str(), value.c_str());
  }
  for (const auto& topic : profile.topics) {
    std::printf("topic\t%s\n", topic.name.c_str());
    for (const auto& cat : topic.categories) {
      std::printf("  category\t%s\n", cat.c_str());
    }
    for (const auto& src : topic.sources) {
      std::printf("  source\t%s\n", src.c_str());
    }
  }
  return 0;
}

int cmd_profile_edit(const CommonOpts& opts, const std::string& profile_path,
                     const std::string& topic, const std::string& category,
                     bool add) {
  auto profile = wikidex::load_profile(profile_path);
  std::vector<std::string> warnings;
  if (add) {
    const auto graph =
        wikidex::load_catgraph(fs::path(opts.index_dir) / "catgraph.tsv");
    warnings = wikidex::add_category(profile, topic, category, graph);
  } else {
    warnings = wikidex::remove_category(profile, topic, category);
  }
  wikidex::save_profile(profile, profile_path);
  for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return 0;
}

int cmd_subcorpus_build(const CommonOpts& opts, const std::string& profile_path,
                        const std::string& topic_name, uint32_t depth) {
  const auto global = wikidex::load_index(opts.index_dir);
  const auto graph =
      wikidex::load_catgraph(fs::path(opts.index_dir) / "catgraph.tsv");
  auto profile = wikidex::load_profile(profile_path);
  const wikidex::Topic* topic = wikidex::find_topic(profile, topic_name);
  if (topic == nullptr) {
    throw wikidex::InputError("no such topic: " + topic_name);
  }

  const std::string digest = wikidex::detail::digest_file(opts.corpus);
  if (!global.source_digest().empty() && digest != global.source_digest()) {
    std::fprintf(stderr,
                 "warning: corpus digest differs from the one the index was "
                 "built from\n");
  }
  auto manifest = wikidex::populate(*topic, graph, depth, digest);
  if (manifest.article_ids.empty()) {
    std::fprintf(stderr, "warning: no articles under the categories of topic '%s'\n",
                 topic_name.c_str());
    throw wikidex::DomainError("empty subcorpus for topic '" + topic_name + "'");
  }

  const auto mcfg = wikidex::MarkupLangConfig::for_language(opts.lang);
  const auto ncfg = make_ncfg(opts);
  const auto docs =
      wikidex::collect_doc_terms(opts.corpus, mcfg, ncfg, opts.workers);
  const auto topic_index =
      wikidex::build_topic_index(manifest, docs, global.constraints());

  const fs::path dir = topic_dir(opts.index_dir, topic_name);
  wikidex::save_index(topic_index, dir);
  wikidex::save_manifest(manifest, dir / "manifest.tsv");
  std::fprintf(stderr, "topic index written to %s (%zu articles)\n",
               dir.string().c_str(), manifest.article_ids.size());
  print_stats(topic_index, dir);
  return 0;
}

int cmd_filter_run(const CommonOpts& opts, const std::string& topic_name,
                   const std::vector<std::string>& feeds,
                   const std::vector<std::string>& text_dirs,
                   std::optional<double> min_weight, uint64_t title_boost,
                   const std::string& format) {
  if (feeds.empty() && text_dirs.empty()) {
    throw wikidex::InputError("give at least one --feed or --text-dir");
  }
  const fs::path tdir = topic_dir(opts.index_dir, topic_name);
  const auto topic_index = wikidex::load_index(tdir);
  const auto global = wikidex::load_index(opts.index_dir);
  const auto ncfg = make_ncfg(opts);

  std::vector<wikidex::IncomingItem> items;
  uint64_t skipped = 0;
  for (const auto& feed : feeds) {
    auto parsed = wikidex::parse_feed(feed);
    skipped += parsed.skipped;
    for (auto& item : parsed.items) items.push_back(std::move(item));
  }
  for (const auto& dir : text_dirs) {
    auto loaded = wikidex::load_text_items(dir);
    skipped += loaded.skipped;
    for (auto& item : loaded.items) items.push_back(std::move(item));
  }
  if (skipped != 0) {
    std::fprintf(stderr, "warning: %" PRIu64 " unusable items skipped\n", skipped);
  }

  const auto ranked = wikidex::rank(items, topic_index, &global, ncfg,
                                    min_weight, topic_name, title_boost);
  for (const auto& s : ranked) {
    if (format == "lines") {
      nlohmann::json j{{"weight", s.weight},
                       {"matched_terms", s.matched_terms},
                       {"source_id", s.item.source_id},
                       {"item_id", s.item.item_id},
                       {"title", s.item.title},
                       {"topic", s.topic_name}};
      std::printf("%s\n", j.dump().c_str());
    } else {
      std::printf("%.6f\t%" PRIu64 "\t%s\t%s\t%s\n", s.weight, s.matched_terms,
                  s.item.source_id.c_str(), s.item.item_id.c_str(),
                  s.item.title.c_str());
    }
  }
  return 0;
}

int cmd_similar(const CommonOpts& opts, const std::string& text_file, uint64_t k) {
  const auto index = wikidex::load_index(opts.index_dir);
  const auto ncfg = make_ncfg(opts);
  const std::string text = wikidex::detail::read_file(text_file);
  const auto hits = wikidex::similar_articles(index, text, ncfg, k);
  for (const auto& hit : hits) {
    const auto* art = index.article(hit.article_id);
    std::printf("%" PRId64 "\t%.6f\t%s\n", hit.article_id, hit.score,
                art ? art->title.c_str() : "");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus indexing and topic-based content filtering"};
  app.set_config("--config", "", "read options from an INI file");
  app.require_subcommand(1);

  CommonOpts opts;
  wikidex::IndexConstraints constraints;
  wikidex::ProfileParams params;

  const auto add_common = [&](CLI::App* cmd, bool with_corpus) {
    cmd->add_option("--lang", opts.lang, "language code (en, simple, ru)")
        ->capture_default_str();
    cmd->add_option("--index-dir", opts.index_dir, "index directory")->required();
    cmd->add_option("--stopwords", opts.stopwords_file,
                    "stopword file overriding the built-in list");
    cmd->add_option("--stemmer", opts.stemmer_file, "suffix-rules stemmer file");
    cmd->add_option("--min-token-len", opts.min_token_len,
                    "minimum lemma length")->capture_default_str();
    cmd->add_option("--workers", opts.workers, "worker threads")
        ->capture_default_str();
    if (with_corpus) {
      cmd->add_option("--corpus", opts.corpus, "corpus file (.xml or .jsonl)")
          ->required();
    }
  };

  // index build | index stats
  auto* index_cmd = app.add_subcommand("index", "build or inspect the global index");
  index_cmd->require_subcommand(1);
  auto* index_build = index_cmd->add_subcommand("build", "index a corpus");
  add_common(index_build, true);
  index_build->add_option("--max-postings", constraints.max_postings_per_term,
                          "postings kept per term")->capture_default_str();
  index_build->add_option("--min-corpus-freq", constraints.min_corpus_freq,
                          "minimum corpus frequency of a retained term")
      ->capture_default_str();
  index_build->add_option("--max-terms", constraints.max_terms,
                          "keep only the N most frequent terms");
  auto* index_stats = index_cmd->add_subcommand("stats", "print index statistics");
  add_common(index_stats, false);

  // profile generate | show | add-cat | remove-cat
  auto* profile_cmd = app.add_subcommand("profile", "generate or edit a profile");
  profile_cmd->require_subcommand(1);
  std::string profile_path, docs_dir, topic_arg, category_arg;

  auto* prof_gen = profile_cmd->add_subcommand(
      "generate", "derive a topic profile from user documents");
  add_common(prof_gen, false);
  prof_gen->add_option("--docs", docs_dir, "directory of user .txt documents")
      ->required();
  prof_gen->add_option("--profile", profile_path, "output profile file")->required();
  prof_gen->add_option("--k-similar", params.k_similar,
                       "similar articles per document")->capture_default_str();
  prof_gen->add_option("--top-categories", params.top_categories_per_doc,
                       "categories kept per document")->capture_default_str();
  prof_gen->add_option("--cluster-threshold", params.cluster_threshold,
                       "single-linkage merge threshold")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();

  auto* prof_show = profile_cmd->add_subcommand("show", "print a profile");
  prof_show->add_option("--profile", profile_path, "profile file")->required();

  auto* prof_add = profile_cmd->add_subcommand("add-cat", "add a category to a topic");
  add_common(prof_add, false);
  prof_add->add_option("--profile", profile_path, "profile file")->required();
  prof_add->add_option("--topic", topic_arg, "topic name")->required();
  prof_add->add_option("--category", category_arg, "category title")->required();

  auto* prof_rm =
      profile_cmd->add_subcommand("remove-cat", "remove a category from a topic");
  prof_rm->add_option("--profile", profile_path, "profile file")->required();
  prof_rm->add_option("--topic", topic_arg, "topic name")->required();
  prof_rm->add_option("--category", category_arg, "category title")->required();

  // subcorpus build
  auto* sub_cmd = app.add_subcommand("subcorpus", "populate and index a topic subcorpus");
  sub_cmd->require_subcommand(1);
  auto* sub_build = sub_cmd->add_subcommand("build", "build one topic's index");
  add_common(sub_build, true);
  uint32_t depth = wikidex::kUnlimitedDepth;
  sub_build->add_option("--profile", profile_path, "profile file")->required();
  sub_build->add_option("--topic", topic_arg, "topic name")->required();
  sub_build->add_option("--depth", depth,
                        "subcategory depth (default unlimited)");

  // filter run
  auto* filter_cmd = app.add_subcommand("filter", "rank incoming texts against a topic");
  filter_cmd->require_subcommand(1);
  auto* filter_run = filter_cmd->add_subcommand("run", "score feed/text items");
  add_common(filter_run, false);
  std::vector<std::string> feeds, text_dirs;
  std::optional<double> min_weight;
  uint64_t title_boost = 2;
  std::string format = "tsv";
  filter_run->add_option("--topic", topic_arg, "topic name")->required();
  filter_run->add_option("--feed", feeds, "RSS feed file (repeatable)");
  filter_run->add_option("--text-dir", text_dirs,
                         "directory of .txt items (repeatable)");
  filter_run->add_option("--min-weight", min_weight, "drop items below this weight");
  filter_run->add_option("--title-boost", title_boost,
                         "how many times title lemmas are counted")
      ->capture_default_str();
  filter_run->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"tsv", "lines"}))->capture_default_str();

  // similar
  auto* similar = app.add_subcommand("similar", "articles similar to a text file");
  add_common(similar, false);
  std::string text_file;
  uint64_t k = 10;
  similar->add_option("--text", text_file, "query text file")->required();
  similar->add_option("--k", k, "number of results")
      ->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (index_build->parsed()) return cmd_index_build(opts, constraints);
    if (index_stats->parsed()) return cmd_index_stats(opts);
    if (prof_gen->parsed())
      return cmd_profile_generate(opts, docs_dir, profile_path, params);
    if (prof_show->parsed()) return cmd_profile_show(profile_path);
    if (prof_add->parsed())
      return cmd_profile_edit(opts, profile_path, topic_arg, category_arg, true);
    if (prof_rm->parsed())
      return cmd_profile_edit(opts, profile_path, topic_arg, category_arg, false);
    if (sub_build->parsed())
      return cmd_subcorpus_build(opts, profile_path, topic_arg, depth);
    if (filter_run->parsed())
      return cmd_filter_run(opts, topic_arg, feeds, text_dirs, min_weight,
                            title_boost, format);
    if (similar->parsed()) return cmd_similar(opts, text_file, k);
    std::fprintf(stderr, "no command selected\n");
    return 2;
  } catch (const wikidex::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const wikidex::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
