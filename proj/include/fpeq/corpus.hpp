#ifndef FPEQ_CORPUS_HPP
#define FPEQ_CORPUS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace fpeq {

/**
 * Built-in property corpora.
 *
 *  - "handwritten-lemma1": alignment-stage equivalence (1 assert)
 *  - "handwritten-lemma2": add-round-stage equivalence (1 assert + 1 assume)
 *  - "theorem-split3":     result equivalence split by field (3 asserts)
 */
std::vector<std::string> corpus_names();

/** Source text of a built-in corpus; throws ConfigError on unknown name. */
std::string corpus_text(std::string_view name);

}  // namespace fpeq

#endif
