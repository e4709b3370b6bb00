#ifndef WEAKLABEL_STEMMER_H_
#define WEAKLABEL_STEMMER_H_

#include <string>
#include <string_view>

namespace weaklabel {

// One pass of the Porter (1980) suffix stripper, following the reference C
// implementation including its two departures from the published rules
// ("bli" -> "ble" in step 2 and the extra "logi" -> "log" rule). Input must
// be lowercase ASCII letters; words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

// porter_stem applied until the word stops changing. A single Porter pass is
// not idempotent ("agreed" -> "agre" -> "agr"); corpus cleaning needs a fixed
// point, so it uses this.
std::string stem(std::string_view word);

}  // namespace weaklabel

#endif  // WEAKLABEL_STEMMER_H_
