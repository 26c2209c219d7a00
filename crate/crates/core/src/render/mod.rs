//! Code-to-image rendering.
//!
//! Source text is laid out on a fixed monospace grid and drawn with the
//! embedded bitmap font. The visualization variant decides glyph colors:
//!
//! * `plain`: every glyph in the foreground color;
//! * `keyword`: keywords in the palette's keyword color, everything else foreground;
//! * `syntax`: each glyph in the palette color of its token class.
//!
//! Rendering is pure integer arithmetic, so the same inputs produce the same
//! pixel buffer on every platform.

pub mod font;
pub mod image;
pub mod lexer;
pub mod profile;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use self::image::{encode_png, read_image, write_image, ImageError, RasterImage, Rgb};
pub use self::lexer::{lex, TokenClass, TokenSpan};
pub use self::profile::{LanguageProfile, ProfileError, ProfileRegistry};

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("invalid render config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Image(#[from] ImageError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Plain,
    #[serde(rename = "keyword")]
    KeywordColor,
    #[default]
    #[serde(rename = "syntax")]
    SyntaxColor,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::KeywordColor => "keyword",
            Variant::SyntaxColor => "syntax",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Variant::Plain),
            "keyword" | "keyword-color" => Ok(Variant::KeywordColor),
            "syntax" | "syntax-color" => Ok(Variant::SyntaxColor),
            other => Err(format!("unknown variant `{other}` (expected plain, keyword or syntax)")),
        }
    }
}

/// One color per token class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Palette {
    colors: [Rgb; 8],
}

impl Default for Palette {
    fn default() -> Self {
        let mut colors = [Rgb::BLACK; 8];
        for class in TokenClass::ALL {
            colors[class.index()] = match class {
                TokenClass::Keyword => Rgb(200, 0, 0),
                TokenClass::Identifier => Rgb(0, 0, 0),
                TokenClass::NumberLiteral => Rgb(0, 0, 200),
                TokenClass::StringLiteral | TokenClass::CharLiteral => Rgb(0, 128, 0),
                TokenClass::Comment => Rgb(128, 128, 128),
                TokenClass::Punctuation | TokenClass::Whitespace => Rgb(0, 0, 0),
            };
        }
        Palette { colors }
    }
}

impl Palette {
    pub fn uniform(color: Rgb) -> Self {
        Palette { colors: [color; 8] }
    }

    pub fn get(&self, class: TokenClass) -> Rgb {
        self.colors[class.index()]
    }

    pub fn set(&mut self, class: TokenClass, color: Rgb) {
        self.colors[class.index()] = color;
    }

    pub fn with(mut self, class: TokenClass, color: Rgb) -> Self {
        self.set(class, color);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    pub canvas_width: u32,
    pub canvas_height: u32,
    pub cell_width: u32,
    pub cell_height: u32,
    pub tab_width: u32,
    pub variant: Variant,
    pub palette: Palette,
    pub background: Rgb,
    pub foreground: Rgb,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            canvas_width: 224,
            canvas_height: 224,
            cell_width: font::GLYPH_WIDTH,
            cell_height: font::GLYPH_HEIGHT,
            tab_width: 4,
            variant: Variant::default(),
            palette: Palette::default(),
            background: Rgb::WHITE,
            foreground: Rgb::BLACK,
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<(), RenderError> {
        let bad = |m: String| Err(RenderError::InvalidConfig(m));
        if self.cell_width == 0 || self.cell_height == 0 {
            return bad(format!(
                "glyph cell must be non-empty, got {}x{}",
                self.cell_width, self.cell_height
            ));
        }
        if self.canvas_width < self.cell_width || self.canvas_height < self.cell_height {
            return bad(format!(
                "canvas {}x{} is smaller than one {}x{} glyph cell",
                self.canvas_width, self.canvas_height, self.cell_width, self.cell_height
            ));
        }
        if self.tab_width == 0 {
            return bad("tab width must be at least 1".into());
        }
        Ok(())
    }

    pub fn columns(&self) -> u32 {
        self.canvas_width / self.cell_width
    }

    pub fn rows(&self) -> u32 {
        self.canvas_height / self.cell_height
    }

    fn glyph_color(&self, class: TokenClass) -> Rgb {
        match self.variant {
            Variant::Plain => self.foreground,
            Variant::KeywordColor if class == TokenClass::Keyword => self.palette.get(class),
            Variant::KeywordColor => self.foreground,
            Variant::SyntaxColor => self.palette.get(class),
        }
    }
}

/// A character placed on the text grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacedGlyph {
    pub row: u32,
    pub column: u32,
    pub ch: char,
    pub class: TokenClass,
}

/// Lays `source` out on the config's grid: newlines start a row, tabs jump to
/// the next tab stop, long lines wrap at the last column and rows past the
/// bottom of the canvas are dropped. Spaces occupy a cell but are not returned.
pub fn layout(source: &str, spans: &[TokenSpan], config: &RenderConfig) -> Vec<PlacedGlyph> {
    let columns = config.columns();
    let rows = config.rows();
    let tab = config.tab_width;
    let mut placed = Vec::new();
    let (mut row, mut col) = (0u32, 0u32);
    let mut span_ix = 0;

    for (offset, ch) in source.char_indices() {
        if row >= rows {
            break;
        }
        match ch {
            '\n' => {
                row += 1;
                col = 0;
            }
            '\r' => {}
            '\t' => {
                col = ((col / tab + 1) * tab).min(columns);
            }
            _ => {
                if col >= columns {
                    row += 1;
                    col = 0;
                    if row >= rows {
                        break;
                    }
                }
                if ch != ' ' {
                    while spans[span_ix].end <= offset {
                        span_ix += 1;
                    }
                    placed.push(PlacedGlyph {
                        row,
                        column: col,
                        ch,
                        class: spans[span_ix].class,
                    });
                }
                col += 1;
            }
        }
    }
    placed
}

/// Renders `source` to an image under `config`.
pub fn render(
    source: &str,
    profile: &LanguageProfile,
    config: &RenderConfig,
) -> Result<RasterImage, RenderError> {
    config.validate()?;
    let spans = lex(source, profile);
    let mut image = RasterImage::filled(config.canvas_width, config.canvas_height, config.background)?;
    let (cw, ch) = (config.cell_width, config.cell_height);

    for glyph in layout(source, &spans, config) {
        let color = config.glyph_color(glyph.class);
        let (x0, y0) = (glyph.column * cw, glyph.row * ch);
        for gy in 0..ch {
            let fy = gy * font::GLYPH_HEIGHT / ch;
            for gx in 0..cw {
                let fx = gx * font::GLYPH_WIDTH / cw;
                if font::is_set(glyph.ch, fx, fy) {
                    image.set_pixel(x0 + gx, y0 + gy, color);
                }
            }
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(variant: Variant) -> RenderConfig {
        RenderConfig {
            variant,
            ..RenderConfig::default()
        }
    }

    fn grid(src: &str, config: &RenderConfig) -> Vec<(u32, u32, char)> {
        let spans = lex(src, &LanguageProfile::java());
        layout(src, &spans, config)
            .into_iter()
            .map(|g| (g.row, g.column, g.ch))
            .collect()
    }

    #[test]
    fn empty_source_is_all_background() {
        let img = render("", &LanguageProfile::java(), &RenderConfig::default()).unwrap();
        assert_eq!((img.width(), img.height()), (224, 224));
        assert!(img.pixels().all(|p| p == Rgb::WHITE));
    }

    #[test]
    fn keyword_glyphs_take_palette_color() {
        let mut config = cfg(Variant::KeywordColor);
        config.palette.set(TokenClass::Keyword, Rgb(255, 0, 0));
        let img = render("if", &LanguageProfile::java(), &config).unwrap();
        let mut inked = 0;
        for y in 0..16 {
            for x in 0..16 {
                let p = img.pixel(x, y);
                if p != Rgb::WHITE {
                    assert_eq!(p, Rgb(255, 0, 0));
                    inked += 1;
                }
            }
        }
        let expected: usize = ['i', 'f']
            .iter()
            .map(|&c| font::glyph(c).iter().map(|r| r.count_ones() as usize).sum::<usize>())
            .sum();
        assert_eq!(inked, expected);
        assert!(inked > 0);
        assert_eq!(img.pixels().filter(|&p| p != Rgb::WHITE).count(), expected);
    }

    #[test]
    fn plain_uses_foreground_only() {
        let mut config = cfg(Variant::Plain);
        config.foreground = Rgb(9, 9, 9);
        let img = render("int x = 1; // c", &LanguageProfile::java(), &config).unwrap();
        assert!(img.pixels().all(|p| p == Rgb::WHITE || p == Rgb(9, 9, 9)));
    }

    #[test]
    fn syntax_colors_by_class() {
        let img = render("x 1", &LanguageProfile::java(), &cfg(Variant::SyntaxColor)).unwrap();
        let cell = |c: u32| -> Vec<Rgb> {
            (0..16)
                .flat_map(|y| (0..8).map(move |x| (x, y)))
                .map(|(x, y)| img.pixel(c * 8 + x, y))
                .filter(|&p| p != Rgb::WHITE)
                .collect()
        };
        assert!(cell(0).iter().all(|&p| p == Rgb(0, 0, 0)));
        assert!(!cell(2).is_empty());
        assert!(cell(2).iter().all(|&p| p == Rgb(0, 0, 200)));
    }

    #[test]
    fn tabs_newlines_and_wrapping() {
        let config = RenderConfig::default(); // 28 columns x 14 rows
        assert_eq!(grid("a\tb", &config), vec![(0, 0, 'a'), (0, 4, 'b')]);
        assert_eq!(grid("\t\tb", &config), vec![(0, 8, 'b')]);
        assert_eq!(grid("ab\r\nc", &config), vec![(0, 0, 'a'), (0, 1, 'b'), (1, 0, 'c')]);
        let long = "x".repeat(30);
        let g = grid(&long, &config);
        assert_eq!(g[27], (0, 27, 'x'));
        assert_eq!(g[28], (1, 0, 'x'));
        assert_eq!(g.len(), 30);
    }

    #[test]
    fn overflow_rows_are_truncated() {
        let config = RenderConfig::default();
        let src: String = (0..20).map(|i| format!("l{i}\n")).collect();
        let g = grid(&src, &config);
        assert_eq!(g.iter().map(|t| t.0).max(), Some(13));
        // 28 * 14 cells exactly, then one more character
        let full = "y".repeat(28 * 14 + 1);
        assert_eq!(grid(&full, &config).len(), 28 * 14);
    }

    #[test]
    fn non_ascii_renders_replacement_glyph() {
        let config = RenderConfig::default();
        assert_eq!(grid("é", &config), vec![(0, 0, 'é')]);
        let img = render("é", &LanguageProfile::java(), &config).unwrap();
        let inked = img.pixels().filter(|&p| p != Rgb::WHITE).count();
        let expected: u32 = font::REPLACEMENT_GLYPH.iter().map(|r| r.count_ones()).sum();
        assert_eq!(inked, expected as usize);
    }

    #[test]
    fn scaled_cells_keep_glyphs_inside() {
        let config = RenderConfig {
            cell_width: 4,
            cell_height: 8,
            ..RenderConfig::default()
        };
        let img = render("W", &LanguageProfile::java(), &config).unwrap();
        for y in 0..224 {
            for x in 0..224 {
                if img.pixel(x, y) != Rgb::WHITE {
                    assert!(x < 4 && y < 8);
                }
            }
        }
    }

    #[test]
    fn invalid_configs() {
        let small = RenderConfig {
            canvas_width: 4,
            ..RenderConfig::default()
        };
        assert!(matches!(
            render("x", &LanguageProfile::c(), &small),
            Err(RenderError::InvalidConfig(_))
        ));
        let no_tab = RenderConfig {
            tab_width: 0,
            ..RenderConfig::default()
        };
        assert!(no_tab.validate().is_err());
    }

    #[test]
    fn variant_names() {
        for v in [Variant::Plain, Variant::KeywordColor, Variant::SyntaxColor] {
            assert_eq!(v.as_str().parse::<Variant>().unwrap(), v);
        }
        assert!("neon".parse::<Variant>().is_err());
    }
}
