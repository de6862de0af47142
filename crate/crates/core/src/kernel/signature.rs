use std::collections::{BTreeMap, BTreeSet};

use super::object::Object;
use super::TypeError;

/// Declared object and morphism generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    objects: BTreeSet<String>,
    morphisms: BTreeMap<String, (Object, Object)>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_object(&mut self, name: impl Into<String>) -> Result<(), TypeError> {
        let name = name.into();
        if self.objects.contains(&name) || self.morphisms.contains_key(&name) {
            return Err(TypeError::Duplicate(name));
        }
        self.objects.insert(name);
        Ok(())
    }

    /// Declare `name : dom → cod`. Both objects are stored strictified.
    pub fn declare_morphism(&mut self, name: impl Into<String>, dom: &Object, cod: &Object) -> Result<(), TypeError> {
        let name = name.into();
        if self.objects.contains(&name) || self.morphisms.contains_key(&name) {
            return Err(TypeError::Duplicate(name));
        }
        let dom = self.check_object(dom)?;
        let cod = self.check_object(cod)?;
        self.morphisms.insert(name, (dom, cod));
        Ok(())
    }

    /// Declare unless an identical declaration already exists.
    pub fn ensure_morphism(&mut self, name: &str, dom: &Object, cod: &Object) -> Result<(), TypeError> {
        match self.morphisms.get(name) {
            Some((d, c)) if *d == dom.strictify() && *c == cod.strictify() => Ok(()),
            Some(_) => Err(TypeError::Duplicate(name.to_string())),
            None => self.declare_morphism(name, dom, cod),
        }
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.contains(name)
    }

    pub fn morphism(&self, name: &str) -> Option<&(Object, Object)> {
        self.morphisms.get(name)
    }

    pub fn objects(&self) -> impl Iterator<Item = &String> {
        self.objects.iter()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = (&String, &(Object, Object))> {
        self.morphisms.iter()
    }

    /// Check every generator in `a` is declared; return its strict form.
    pub fn check_object(&self, a: &Object) -> Result<Object, TypeError> {
        let mut names = Vec::new();
        a.generators(&mut names);
        if let Some(missing) = names.into_iter().find(|n| !self.objects.contains(n)) {
            return Err(TypeError::UndeclaredObject(missing));
        }
        Ok(a.strictify())
    }
}
