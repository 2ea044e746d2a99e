//! Client for the session service. [`Client`] sends raw requests;
//! [`RemoteSession`] binds a client to one session id.

use ootp_core::session::{Op, Request, Response, StateView};

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    #[error("transport: {0}")]
    Http(#[from] reqwest::Error),
    #[error("{0}")]
    Server(String),
}

#[derive(Debug, Clone)]
pub struct Client {
    http: reqwest::Client,
    url: String,
}

impl Client {
    /// `url` is the service endpoint, e.g. `http://127.0.0.1:7878/`.
    pub fn new(url: impl Into<String>) -> Client {
        Client {
            http: reqwest::Client::new(),
            url: url.into(),
        }
    }

    pub fn url(&self) -> &str {
        &self.url
    }

    /// Send one request. Error responses are returned, not raised.
    pub async fn send(&self, req: &Request) -> Result<Response, ClientError> {
        let res = self.http.post(&self.url).json(req).send().await?;
        Ok(res.json().await?)
    }

    pub fn session(&self, id: impl Into<String>) -> RemoteSession {
        RemoteSession {
            client: self.clone(),
            id: id.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RemoteSession {
    client: Client,
    id: String,
}

impl RemoteSession {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub async fn request(&self, op: Op, text: Option<&str>) -> Result<Response, ClientError> {
        self.client
            .send(&Request::new(op, self.id.clone(), text))
            .await
    }

    /// Like [`RemoteSession::request`], with error responses raised.
    async fn checked(&self, op: Op, text: Option<&str>) -> Result<Response, ClientError> {
        let r = self.request(op, text).await?;
        if r.ok {
            Ok(r)
        } else {
            Err(ClientError::Server(r.error.unwrap_or_default()))
        }
    }

    pub async fn new_goal(&self, sequent: &str) -> Result<Option<StateView>, ClientError> {
        Ok(self.checked(Op::NewGoal, Some(sequent)).await?.state)
    }

    pub async fn apply(&self, tactic: &str) -> Result<Option<StateView>, ClientError> {
        Ok(self.checked(Op::Apply, Some(tactic)).await?.state)
    }

    pub async fn undo(&self) -> Result<Option<StateView>, ClientError> {
        Ok(self.checked(Op::Undo, None).await?.state)
    }

    pub async fn state(&self) -> Result<Option<StateView>, ClientError> {
        Ok(self.checked(Op::State, None).await?.state)
    }

    /// The theorem text.
    pub async fn qed(&self) -> Result<String, ClientError> {
        Ok(self.checked(Op::Qed, None).await?.result.join("\n"))
    }

    pub async fn applicable(&self) -> Result<Vec<String>, ClientError> {
        Ok(self.checked(Op::Applicable, None).await?.result)
    }

    pub async fn load_group(&self, src: &str) -> Result<Vec<String>, ClientError> {
        Ok(self.checked(Op::LoadGroup, Some(src)).await?.result)
    }

    /// Run one script command; returns the lines it prints.
    pub async fn command(&self, text: &str) -> Result<Vec<String>, ClientError> {
        Ok(self.checked(Op::Command, Some(text)).await?.result)
    }
}
