use super::{Formula, Language, Node, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Top,
    Bottom,
    Not,
    Forall,
    Exists,
    Box,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Top => "`T`".into(),
            Token::Bottom => "`F`".into(),
            Token::Not => "`~`".into(),
            Token::Forall => "`forall`".into(),
            Token::Exists => "`exists`".into(),
            Token::Box => "`box`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }
}

fn error(position: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((start, Token::LParen)),
            b')' => out.push((start, Token::RParen)),
            b'~' => out.push((start, Token::Not)),
            b'&' => out.push((start, Token::And)),
            b'|' => out.push((start, Token::Or)),
            b'T' => out.push((start, Token::Top)),
            b'F' => out.push((start, Token::Bottom)),
            b'-' => {
                if bytes.get(i + 1) != Some(&b'>') {
                    return Err(error(start, "expected `->`"));
                }
                i += 1;
                out.push((start, Token::Implies));
            }
            b'<' => {
                if bytes.get(i + 1) != Some(&b'-') || bytes.get(i + 2) != Some(&b'>') {
                    return Err(error(start, "expected `<->`"));
                }
                i += 2;
                out.push((start, Token::Iff));
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len()
                    && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_')
                {
                    i += 1;
                }
                let word = &text[start..=i];
                let token = match word {
                    "forall" => Token::Forall,
                    "exists" => Token::Exists,
                    "box" => Token::Box,
                    _ => Token::Ident(word.to_string()),
                };
                out.push((start, token));
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(error(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    language: Language,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Node, SyntaxError> {
        let left = self.implication()?;
        if self.eat(&Token::Iff) {
            let right = self.iff()?;
            return Ok(Node::iff(left, right));
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Node, SyntaxError> {
        let left = self.disjunction()?;
        if self.eat(&Token::Implies) {
            let right = self.implication()?;
            return Ok(Node::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Node, SyntaxError> {
        let mut node = self.conjunction()?;
        while self.eat(&Token::Or) {
            node = Node::or(node, self.conjunction()?);
        }
        Ok(node)
    }

    fn conjunction(&mut self) -> Result<Node, SyntaxError> {
        let mut node = self.unary()?;
        while self.eat(&Token::And) {
            node = Node::and(node, self.unary()?);
        }
        Ok(node)
    }

    fn unary(&mut self) -> Result<Node, SyntaxError> {
        let at = self.offset();
        match self.peek() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Node::not(self.unary()?))
            }
            Some(Token::Forall) => {
                self.pos += 1;
                Ok(Node::forall(self.unary()?))
            }
            Some(Token::Exists) => {
                if self.language == Language::Modal {
                    return Err(SyntaxError::LanguageMismatch {
                        position: Some(at),
                        connective: "exists",
                        language: self.language,
                    });
                }
                self.pos += 1;
                Ok(Node::exists(self.unary()?))
            }
            Some(Token::Box) => {
                if self.language == Language::Intuitionistic {
                    return Err(SyntaxError::LanguageMismatch {
                        position: Some(at),
                        connective: "box",
                        language: self.language,
                    });
                }
                self.pos += 1;
                Ok(Node::boxed(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Node, SyntaxError> {
        let at = self.offset();
        let Some(token) = self.peek().cloned() else {
            return Err(error(at, "unexpected end of input"));
        };
        self.pos += 1;
        match token {
            Token::Ident(name) => Ok(Node::Letter(name)),
            Token::Top => Ok(Node::Top),
            Token::Bottom => Ok(Node::Bottom),
            Token::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    let found = self
                        .peek()
                        .map(Token::describe)
                        .unwrap_or_else(|| "end of input".into());
                    return Err(error(self.offset(), format!("expected `)`, found {found}")));
                }
                Ok(inner)
            }
            other => Err(error(
                at,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }
}

/// Parses `text` as a formula of `language`.
///
/// Precedence from tightest to loosest: the prefix operators `~`, `forall`,
/// `exists`, `box`; then `&`; then `|`; then right-associative `->`; then
/// `<->`. `&` and `|` associate to the left.
pub fn parse(text: &str, language: Language) -> Result<Formula, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        language,
    };
    let root = parser.iff()?;
    if let Some(token) = parser.peek() {
        return Err(error(
            parser.offset(),
            format!("unexpected {} after formula", token.describe()),
        ));
    }
    Formula::new(language, root)
}
