#ifndef WEAKLABEL_ERROR_H_
#define WEAKLABEL_ERROR_H_

#include <stdexcept>
#include <string>

namespace weaklabel {

// Base of every error raised by the library. Subclasses carry no extra state;
// the type is the error kind and what() is the human-readable detail.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WEAKLABEL_DEFINE_ERROR(Name)   \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  };

WEAKLABEL_DEFINE_ERROR(IoError)
WEAKLABEL_DEFINE_ERROR(MalformedLine)
WEAKLABEL_DEFINE_ERROR(EmptyLexicon)
WEAKLABEL_DEFINE_ERROR(InvalidLexicon)
WEAKLABEL_DEFINE_ERROR(UnknownAspect)
WEAKLABEL_DEFINE_ERROR(InvalidMatrix)
WEAKLABEL_DEFINE_ERROR(EmptyMatrix)
WEAKLABEL_DEFINE_ERROR(DegenerateMatrix)
WEAKLABEL_DEFINE_ERROR(EmptyVocabulary)
WEAKLABEL_DEFINE_ERROR(MissingEmbeddings)
WEAKLABEL_DEFINE_ERROR(InconsistentDimension)
WEAKLABEL_DEFINE_ERROR(EmptyTable)
WEAKLABEL_DEFINE_ERROR(ShapeMismatch)
WEAKLABEL_DEFINE_ERROR(EmptyTrainingSet)
WEAKLABEL_DEFINE_ERROR(InvalidConfig)
WEAKLABEL_DEFINE_ERROR(LengthMismatch)
WEAKLABEL_DEFINE_ERROR(SchemaError)

#undef WEAKLABEL_DEFINE_ERROR

}  // namespace weaklabel

#endif  // WEAKLABEL_ERROR_H_
