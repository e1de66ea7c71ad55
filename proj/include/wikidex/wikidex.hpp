#ifndef WIKIDEX_WIKIDEX_HPP
#define WIKIDEX_WIKIDEX_HPP

// Umbrella header: the whole corpus-indexing and filtering toolkit.

#include "wikidex/catgraph.hpp"
#include "wikidex/corpus.hpp"
#include "wikidex/errors.hpp"
#include "wikidex/filter.hpp"
#include "wikidex/index.hpp"
#include "wikidex/pipeline.hpp"
#include "wikidex/profile.hpp"
#include "wikidex/relatedness.hpp"
#include "wikidex/subcorpus.hpp"
#include "wikidex/textnorm.hpp"
#include "wikidex/wikitext.hpp"

#endif  // WIKIDEX_WIKIDEX_HPP
