#pragma once

#include <string>
#include <vector>

#include "gramnet/keywords.hpp"
#include "gramnet/preprocess.hpp"

namespace gramnet {

struct OccurrenceRow {
  Date date;
  std::string document_id;
  std::string set_name;
  double relative_frequency = 0.0;  // matching tokens / document tokens
};

struct OccurrenceSeries {
  std::vector<OccurrenceRow> rows;  // ordered by date, document id, set name
};

// Per-document share of tokens matching each keyword set. Empty documents
// record frequency 0.
OccurrenceSeries keyword_timeseries(const std::vector<Document>& corpus,
                                    const std::vector<KeywordSet>& sets);

}  // namespace gramnet
