//! Line protocol for evaluators that run in a child process.
//!
//! The child prints `READY` once it can accept work. Each evaluation is one
//! request line on its stdin and one response line on its stdout:
//!
//! ```text
//! -> {"id":12,"seed":987654321,"genotype":{"space":"SP-I",...}}
//! <- {"id":12,"accuracy":0.8731}
//! ```
//!
//! A response may carry `"error":"..."` instead of `"accuracy"`. The id must
//! be echoed verbatim and the accuracy must lie in `[0, 1]`.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::{Duration, Instant};

use serde_json::Value;

use super::{EvalError, EvalRequest, EvaluationRecord, Evaluator, EvaluatorFactory};
use crate::engine::Genotype;

pub const READY_LINE: &str = "READY";

/// How to launch an external evaluator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSpec {
    pub command: Vec<String>,
    pub timeout: Duration,
}

impl ExternalSpec {
    pub fn new(command: Vec<String>, timeout: Duration) -> Result<Self, EvalError> {
        if command.is_empty() {
            return Err(EvalError::Spawn("empty command line".into()));
        }
        if timeout.is_zero() {
            return Err(EvalError::Spawn("timeout must be positive".into()));
        }
        Ok(Self { command, timeout })
    }
}

/// Factory that starts one child process per engine worker.
#[derive(Clone, Debug)]
pub struct ExternalEvaluator {
    pub spec: ExternalSpec,
}

impl ExternalEvaluator {
    pub fn new(spec: ExternalSpec) -> Self {
        Self { spec }
    }
}

impl<G: Genotype> EvaluatorFactory<G> for ExternalEvaluator {
    type Worker = ExternalWorker;

    fn worker(&self, _index: usize) -> Result<Self::Worker, EvalError> {
        ExternalWorker::spawn(&self.spec)
    }
}

/// A running child process speaking the line protocol.
pub struct ExternalWorker {
    child: Child,
    stdin: Option<ChildStdin>,
    lines: Receiver<std::io::Result<String>>,
    timeout: Duration,
}

impl ExternalWorker {
    pub fn spawn(spec: &ExternalSpec) -> Result<Self, EvalError> {
        let mut child = Command::new(&spec.command[0])
            .args(&spec.command[1..])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| EvalError::Spawn(format!("{}: {e}", spec.command[0])))?;
        let stdin = child.stdin.take();
        let stdout = child.stdout.take().expect("stdout is piped");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                let stop = line.is_err();
                if tx.send(line).is_err() || stop {
                    break;
                }
            }
        });
        let mut worker = Self {
            child,
            stdin,
            lines: rx,
            timeout: spec.timeout,
        };
        let first = worker.read_line()?;
        if first.trim_end() != READY_LINE {
            return Err(EvalError::Protocol {
                reason: "expected READY handshake".into(),
                raw: first,
            });
        }
        Ok(worker)
    }

    fn read_line(&mut self) -> Result<String, EvalError> {
        match self.lines.recv_timeout(self.timeout) {
            Ok(Ok(line)) => Ok(line),
            Ok(Err(e)) => Err(EvalError::Io(e)),
            Err(RecvTimeoutError::Timeout) => {
                let _ = self.child.kill();
                Err(EvalError::Timeout(self.timeout))
            }
            Err(RecvTimeoutError::Disconnected) => Err(self.exit_error()),
        }
    }

    fn exit_error(&mut self) -> EvalError {
        let deadline = Instant::now() + self.timeout;
        loop {
            match self.child.try_wait() {
                Ok(Some(status)) if !status.success() => return EvalError::Process(status.to_string()),
                Ok(Some(_)) => {
                    return EvalError::Protocol {
                        reason: "evaluator closed its output".into(),
                        raw: String::new(),
                    }
                }
                Ok(None) if Instant::now() < deadline => thread::sleep(Duration::from_millis(5)),
                Ok(None) => {
                    return EvalError::Protocol {
                        reason: "evaluator closed its output".into(),
                        raw: String::new(),
                    }
                }
                Err(e) => return EvalError::Io(e),
            }
        }
    }

    /// Sends one request line and waits for its response.
    pub fn request(&mut self, id: u64, seed: u64, document: &str) -> Result<f64, EvalError> {
        let line = format!("{{\"id\":{id},\"seed\":{seed},\"genotype\":{document}}}\n");
        let stdin = self
            .stdin
            .as_mut()
            .ok_or_else(|| EvalError::Failed("evaluator stdin closed".into()))?;
        if let Err(e) = stdin.write_all(line.as_bytes()).and_then(|_| stdin.flush()) {
            return Err(match e.kind() {
                std::io::ErrorKind::BrokenPipe => self.exit_error(),
                _ => EvalError::Io(e),
            });
        }
        let response = self.read_line()?;
        parse_response(&response, id)
    }
}

pub(crate) fn parse_response(raw: &str, id: u64) -> Result<f64, EvalError> {
    let protocol = |reason: &str| EvalError::Protocol {
        reason: reason.to_string(),
        raw: raw.to_string(),
    };
    let value: Value = serde_json::from_str(raw).map_err(|_| protocol("malformed response line"))?;
    let object = value.as_object().ok_or_else(|| protocol("response is not an object"))?;
    match object.get("id").and_then(Value::as_u64) {
        Some(echoed) if echoed == id => {}
        Some(_) => return Err(protocol("response id does not match request")),
        None => return Err(protocol("response has no integer id")),
    }
    if let Some(message) = object.get("error") {
        return Err(EvalError::Remote(
            message.as_str().map(str::to_string).unwrap_or_else(|| message.to_string()),
        ));
    }
    let accuracy = object
        .get("accuracy")
        .and_then(Value::as_f64)
        .ok_or_else(|| protocol("response has no numeric accuracy"))?;
    if !(0.0..=1.0).contains(&accuracy) {
        return Err(protocol("accuracy outside [0, 1]"));
    }
    Ok(accuracy)
}

impl<G: Genotype> Evaluator<G> for ExternalWorker {
    fn evaluate(&mut self, genotype: &G, request: EvalRequest) -> Result<EvaluationRecord, EvalError> {
        let start = Instant::now();
        let accuracy = self.request(request.id, request.seed, &genotype.document())?;
        Ok(EvaluationRecord {
            accuracy,
            wall_time: start.elapsed(),
            evaluator_seed: request.seed,
        })
    }
}

impl Drop for ExternalWorker {
    fn drop(&mut self) {
        // Closing stdin lets a well-behaved child exit on its own.
        drop(self.stdin.take());
        let deadline = Instant::now() + Duration::from_millis(200);
        while Instant::now() < deadline {
            if let Ok(Some(_)) = self.child.try_wait() {
                return;
            }
            thread::sleep(Duration::from_millis(5));
        }
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}
