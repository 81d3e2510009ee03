#include "gramnet/timeseries.hpp"

#include <algorithm>
#include <tuple>

namespace gramnet {

OccurrenceSeries keyword_timeseries(const std::vector<Document>& corpus,
                                    const std::vector<KeywordSet>& sets) {
  OccurrenceSeries series;
  series.rows.reserve(corpus.size() * sets.size());
  for (const auto& doc : corpus) {
    for (const auto& ks : sets) {
      std::size_t matches = 0;
      for (const auto& t : doc.tokens) {
        if (ks.matches(t)) ++matches;
      }
      OccurrenceRow row;
      row.date = doc.date;
      row.document_id = doc.id;
      row.set_name = ks.name();
      row.relative_frequency =
          doc.tokens.empty() ? 0.0
                             : static_cast<double>(matches) /
                                   static_cast<double>(doc.tokens.size());
      series.rows.push_back(std::move(row));
    }
  }
  std::sort(series.rows.begin(), series.rows.end(),
            [](const OccurrenceRow& a, const OccurrenceRow& b) {
              return std::tie(a.date, a.document_id, a.set_name) <
                     std::tie(b.date, b.document_id, b.set_name);
            });
  return series;
}

}  // namespace gramnet
